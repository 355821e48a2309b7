#include "dqml/qcore.hpp"

#include <algorithm>
#include <cmath>

#include "dqml/kernels.hpp"
#include "dqml/linalg.hpp"

namespace dqml {

namespace {

double vector_norm(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& z : v)
        s += std::norm(z);
    return std::sqrt(s);
}

}  // namespace

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return {{0.0, -kI}, {kI, 0.0}}; }
ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

PureState::PureState(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {
    require(!amps_.empty() && amps_.size() <= kMaxDim, "PureState: bad dimension");
    require(std::abs(vector_norm(amps_) - 1.0) <= 1e-12,
            "PureState: vector is not normalized");
}

PureState PureState::normalized(std::vector<cplx> amplitudes) {
    require(!amplitudes.empty() && amplitudes.size() <= kMaxDim,
            "PureState: bad dimension");
    const double n = vector_norm(amplitudes);
    require(n > 0.0, "PureState: zero vector");
    for (cplx& z : amplitudes)
        z /= n;
    return PureState(std::move(amplitudes), Unchecked{});
}

PureState PureState::basis_state(std::size_t dim, std::size_t index) {
    require(index < dim, "basis_state: index out of range");
    std::vector<cplx> v(dim);
    v[index] = 1.0;
    return PureState(std::move(v), Unchecked{});
}

PureState tensor(const PureState& a, const PureState& b) {
    std::vector<cplx> v(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            v[i * b.dim() + j] = a[i] * b[j];
    return PureState::normalized(std::move(v));
}

DensityOperator DensityOperator::from_matrix(ComplexMatrix m) {
    require(m.square() && m.rows() >= 1 && m.rows() <= kMaxDim,
            "DensityOperator: bad dimension");
    require(m.is_hermitian(1e-10), "DensityOperator: matrix not Hermitian");
    require(std::abs(m.trace() - cplx{1.0, 0.0}) <= 1e-10,
            "DensityOperator: trace differs from 1");
    return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
    const std::size_t d = psi.dim();
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            m(i, j) = psi[i] * std::conj(psi[j]);
    return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
    require(dim >= 1 && dim <= kMaxDim, "DensityOperator: bad dimension");
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        m(i, i) = 1.0 / static_cast<double>(dim);
    return DensityOperator(std::move(m));
}

double DensityOperator::min_eigenvalue() const {
    return linalg::eigh(matrix_).values.front();
}

bool DensityOperator::is_positive_semidefinite(double tol) const {
    return min_eigenvalue() >= -tol;
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    return DensityOperator::from_matrix(kron(a.matrix(), b.matrix()));
}

DensityOperator repair_drift(ComplexMatrix rho) {
    require(rho.square(), "repair_drift: matrix not square");
    double herm_drift = 0.0;
    for (std::size_t i = 0; i < rho.rows(); ++i)
        for (std::size_t j = i; j < rho.cols(); ++j)
            herm_drift = std::max(herm_drift,
                                  std::abs(rho(i, j) - std::conj(rho(j, i))));
    const double trace_drift = std::abs(rho.trace() - cplx{1.0, 0.0});
    require(herm_drift <= 1e-8 && trace_drift <= 1e-8,
            "repair_drift: drift beyond 1e-8 signals an integrator failure");
    ComplexMatrix sym = 0.5 * (rho + rho.adjoint());
    sym *= cplx{1.0 / sym.trace().real(), 0.0};
    return DensityOperator::from_matrix(std::move(sym));
}

DensityOperator evolve_unitary(const DensityOperator& rho, const ComplexMatrix& u) {
    require(u.square() && u.rows() == rho.dim(), "evolve_unitary: dimension mismatch");
    require(u.is_unitary(1e-10), "evolve_unitary: U is not unitary");
    const std::size_t n = rho.dim();
    ComplexMatrix tmp(n, n), out(n, n);
    kern::active().gemm(n, tmp.data(), u.data(), rho.matrix().data());
    kern::active().gemm_adjb_acc(n, out.data(), tmp.data(), u.data());
    return DensityOperator::from_matrix(std::move(out));
}

DensityOperator partial_trace(const DensityOperator& rho_c, std::size_t d_s,
                              std::size_t d_e, Keep keep) {
    require(d_s >= 1 && d_e >= 1 && rho_c.dim() == d_s * d_e,
            "partial_trace: dims do not factor the composite dimension");
    const ComplexMatrix& m = rho_c.matrix();
    if (keep == Keep::System) {
        ComplexMatrix r(d_s, d_s);
        for (std::size_t l = 0; l < d_s; ++l)
            for (std::size_t mm = 0; mm < d_s; ++mm) {
                cplx s{0.0, 0.0};
                for (std::size_t a = 0; a < d_e; ++a)
                    s += m(l * d_e + a, mm * d_e + a);
                r(l, mm) = s;
            }
        return DensityOperator::from_matrix(std::move(r));
    }
    ComplexMatrix r(d_e, d_e);
    for (std::size_t a = 0; a < d_e; ++a)
        for (std::size_t b = 0; b < d_e; ++b) {
            cplx s{0.0, 0.0};
            for (std::size_t l = 0; l < d_s; ++l)
                s += m(l * d_e + a, l * d_e + b);
            r(a, b) = s;
        }
    return DensityOperator::from_matrix(std::move(r));
}

double expectation(const DensityOperator& rho, const ComplexMatrix& a) {
    require(a.square() && a.rows() == rho.dim(), "expectation: dimension mismatch");
    require(a.is_hermitian(1e-10), "expectation: observable not Hermitian");
    const cplx t = kern::active().trace_mul(rho.dim(), a.data(), rho.matrix().data());
    require(std::abs(t.imag()) < 1e-10, "expectation: imaginary residue too large");
    return t.real();
}

MeasureResult projective_measure(const DensityOperator& rho,
                                 const ComplexMatrix& p, double u) {
    require(rho.dim() == 2 && p.square() && p.rows() == 2,
            "projective_measure: defined for qubits only");
    require(p.is_hermitian(1e-10) &&
                (p * p - p).max_abs() <= 1e-10 &&
                std::abs(p.trace() - cplx{1.0, 0.0}) <= 1e-10,
            "projective_measure: P is not a rank-1 orthogonal projector");

    // Recover |chi> from the dominant column of P.
    const std::size_t jc = std::abs(p(0, 0)) >= std::abs(p(1, 1)) ? 0 : 1;
    PureState chi = PureState::normalized({p(0, jc), p(1, jc)});

    double p1 = std::clamp(expectation(rho, p), 0.0, 1.0);
    if (u < p1)
        return {1, chi};
    return {0, orthogonal_qubit(chi)};
}

double fidelity(const PureState& chi, const PureState& phi) {
    require(chi.dim() == phi.dim(), "fidelity: dimension mismatch");
    const cplx ov = kern::active().dotc(chi.dim(), chi.amplitudes().data(),
                                        phi.amplitudes().data());
    return std::min(std::abs(ov), 1.0);
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    require(rho.dim() == sigma.dim(), "trace_distance: dimension mismatch");
    auto eg = linalg::eigh(rho.matrix() - sigma.matrix());
    double s = 0.0;
    for (double v : eg.values)
        s += std::abs(v);
    return 0.5 * s;
}

PureState orthogonal_qubit(const PureState& phi) {
    require(phi.dim() == 2, "orthogonal_qubit: qubit states only");
    return PureState::normalized({-std::conj(phi[1]), std::conj(phi[0])});
}

}  // namespace dqml
