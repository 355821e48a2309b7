#include "dqml/linalg.hpp"

#include <cmath>
#include <complex>
#include <cstdint>

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace dqml::linalg {

namespace {

void check_info(lapack_int info, const char* routine) {
    if (info != 0)
        throw Error(std::string(routine) + " failed, info=" + std::to_string(info));
}

}  // namespace

EighResult eigh(const ComplexMatrix& a) {
    require(a.square(), "eigh: matrix not square");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    EighResult r{std::vector<double>(a.rows()), a};
    lapack_int info = LAPACKE_zheev(LAPACK_ROW_MAJOR, 'V', 'U', n,
                                    r.vectors.data(), n, r.values.data());
    check_info(info, "zheev");
    return r;
}

EigResult eig(const ComplexMatrix& a) {
    require(a.square(), "eig: matrix not square");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    ComplexMatrix work = a;
    EigResult r{std::vector<cplx>(a.rows()), ComplexMatrix(a.rows(), a.rows())};
    lapack_int info =
        LAPACKE_zgeev(LAPACK_ROW_MAJOR, 'N', 'V', n, work.data(), n,
                      r.values.data(), nullptr, n, r.vectors.data(), n);
    check_info(info, "zgeev");
    return r;
}

SchurResult schur_kernel_first(const ComplexMatrix& a, double tol) {
    require(a.square(), "schur: matrix not square");
    const std::size_t dim = a.rows();
    const lapack_int n = static_cast<lapack_int>(dim);
    SchurResult r{a, ComplexMatrix(dim, dim), std::vector<cplx>(dim), 0};
    lapack_int sdim = 0;
    lapack_int info =
        LAPACKE_zgees(LAPACK_ROW_MAJOR, 'V', 'N', nullptr, n, r.t.data(), n,
                      &sdim, r.values.data(), r.q.data(), n);
    check_info(info, "zgees");

    // Bubble eigenvalues inside the tolerance disc to the leading block.
    std::size_t front = 0;
    while (true) {
        std::size_t pick = dim;
        for (std::size_t i = front; i < dim; ++i) {
            if (std::abs(r.t(i, i)) <= tol) {
                pick = i;
                break;
            }
        }
        if (pick == dim)
            break;
        if (pick != front) {
            info = LAPACKE_ztrexc(LAPACK_ROW_MAJOR, 'V', n, r.t.data(), n,
                                  r.q.data(), n,
                                  static_cast<lapack_int>(pick + 1),
                                  static_cast<lapack_int>(front + 1));
            check_info(info, "ztrexc");
        }
        ++front;
    }
    for (std::size_t i = 0; i < dim; ++i)
        r.values[i] = r.t(i, i);
    r.n_kernel = front;
    return r;
}

ComplexMatrix solve(ComplexMatrix a, ComplexMatrix b) {
    require(a.square() && a.rows() == b.rows(), "solve: shape mismatch");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    const lapack_int nrhs = static_cast<lapack_int>(b.cols());
    std::vector<lapack_int> ipiv(a.rows());
    lapack_int info = LAPACKE_zgesv(LAPACK_ROW_MAJOR, n, nrhs, a.data(), n,
                                    ipiv.data(), b.data(), nrhs);
    check_info(info, "zgesv");
    return b;
}

ComplexMatrix sylvester_triangular(const ComplexMatrix& t11,
                                   const ComplexMatrix& t22,
                                   const ComplexMatrix& c) {
    require(t11.square() && t22.square(), "sylvester: blocks not square");
    require(c.rows() == t11.rows() && c.cols() == t22.rows(),
            "sylvester: rhs shape mismatch");
    const lapack_int m = static_cast<lapack_int>(t11.rows());
    const lapack_int n = static_cast<lapack_int>(t22.rows());
    ComplexMatrix x = c;
    double scale = 1.0;
    lapack_int info =
        LAPACKE_ztrsyl(LAPACK_ROW_MAJOR, 'N', 'N', -1, m, n, t11.data(), m,
                       t22.data(), n, x.data(), n, &scale);
    check_info(info, "ztrsyl");
    require(scale > 0.0, "sylvester: zero scale");
    x *= cplx{1.0 / scale, 0.0};
    return x;
}

std::vector<double> lstsq(const std::vector<double>& a, std::size_t rows,
                          std::size_t cols, std::vector<double> b) {
    require(a.size() == rows * cols && b.size() == rows, "lstsq: shape mismatch");
    const lapack_int m = static_cast<lapack_int>(rows);
    const lapack_int n = static_cast<lapack_int>(cols);
    std::vector<double> awork = a;
    b.resize(std::max(rows, cols));
    std::vector<double> sv(std::min(rows, cols));
    lapack_int rank = 0;
    lapack_int info = LAPACKE_dgelsd(LAPACK_ROW_MAJOR, m, n, 1, awork.data(), n,
                                     b.data(), 1, sv.data(), -1.0, &rank);
    check_info(info, "dgelsd");
    b.resize(cols);
    return b;
}

std::vector<double> solve_spd(std::vector<double> a, std::size_t n,
                              std::vector<double> b) {
    require(a.size() == n * n && b.size() == n, "solve_spd: shape mismatch");
    lapack_int info = LAPACKE_dposv(LAPACK_ROW_MAJOR, 'U',
                                    static_cast<lapack_int>(n), 1, a.data(),
                                    static_cast<lapack_int>(n), b.data(), 1);
    check_info(info, "dposv");
    return b;
}

ComplexMatrix expm(const ComplexMatrix& a) {
    require(a.square(), "expm: matrix not square");
    const std::size_t n = a.rows();
    static const double kPade13[] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    const double theta13 = 5.371920351148152;

    int s = 0;
    const double nrm = a.one_norm();
    if (nrm > theta13) {
        s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
        if (s < 0)
            s = 0;
    }
    ComplexMatrix x = a;
    x *= cplx{std::ldexp(1.0, -s), 0.0};

    const ComplexMatrix ident = ComplexMatrix::identity(n);
    const ComplexMatrix x2 = x * x;
    const ComplexMatrix x4 = x2 * x2;
    const ComplexMatrix x6 = x2 * x4;

    ComplexMatrix w1 = kPade13[13] * x6 + kPade13[11] * x4 + kPade13[9] * x2;
    ComplexMatrix w2 = kPade13[7] * x6 + kPade13[5] * x4 + kPade13[3] * x2 +
                       kPade13[1] * ident;
    ComplexMatrix u = x * (x6 * w1 + w2);
    ComplexMatrix z1 = kPade13[12] * x6 + kPade13[10] * x4 + kPade13[8] * x2;
    ComplexMatrix v = x6 * z1 + kPade13[6] * x6 + kPade13[4] * x4 +
                      kPade13[2] * x2 + kPade13[0] * ident;

    ComplexMatrix r = solve(v - u, v + u);
    for (int i = 0; i < s; ++i)
        r = r * r;
    return r;
}

}  // namespace dqml::linalg
