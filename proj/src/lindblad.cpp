#include "dqml/lindblad.hpp"

#include <cmath>

#include "dqml/linalg.hpp"

namespace dqml {

namespace {

ComplexMatrix lowering_op() { return {{0.0, 1.0}, {0.0, 0.0}}; }

ComplexMatrix collective_lowering() {
    const ComplexMatrix s = lowering_op();
    const ComplexMatrix id2 = ComplexMatrix::identity(2);
    return kron(s, id2) + kron(id2, s);
}

}  // namespace

LindbladModel LindbladModel::make(ComplexMatrix hamiltonian,
                                  std::vector<Dissipator> dissipators) {
    require(hamiltonian.square() && hamiltonian.rows() >= 1,
            "LindbladModel: bad Hamiltonian shape");
    require(hamiltonian.is_hermitian(1e-10),
            "LindbladModel: Hamiltonian not Hermitian");
    const std::size_t dim = hamiltonian.rows();
    for (const Dissipator& d : dissipators) {
        require(d.rate >= 0.0 && std::isfinite(d.rate),
                "LindbladModel: rates must be finite and nonnegative");
        require(d.jump_op.square() && d.jump_op.rows() == dim,
                "LindbladModel: jump operator dimension mismatch");
    }
    return {dim, std::move(hamiltonian), std::move(dissipators)};
}

Liouvillian build_liouvillian(const LindbladModel& model) {
    const std::size_t d = model.dim;
    require(d <= 16, "build_liouvillian: dim too large (max 16)");
    const ComplexMatrix id = ComplexMatrix::identity(d);

    ComplexMatrix m = -kI * (kron(id, model.hamiltonian) -
                             kron(model.hamiltonian.transpose(), id));
    for (const Dissipator& dis : model.dissipators) {
        const ComplexMatrix& l = dis.jump_op;
        const ComplexMatrix ldl = l.adjoint() * l;
        ComplexMatrix term = kron(l.conjugate(), l);
        term -= 0.5 * kron(id, ldl);
        term -= 0.5 * kron(ldl.transpose(), id);
        m += dis.rate * term;
    }
    return {d, std::move(m)};
}

DensityOperator evolve(const LindbladModel& model, const DensityOperator& rho0,
                       double t) {
    require(rho0.dim() == model.dim, "evolve: state dimension mismatch");
    require(t >= 0.0 && std::isfinite(t), "evolve: t must be finite and >= 0");
    Liouvillian liou = build_liouvillian(model);
    liou.matrix *= cplx{t, 0.0};
    const ComplexMatrix propagator = linalg::expm(liou.matrix);
    const std::vector<cplx> out = matvec(propagator, vec_column(rho0.matrix()));
    return repair_drift(unvec_column(out, model.dim));
}

std::vector<ComplexMatrix> steady_states(const LindbladModel& model, double tol) {
    require(tol > 0.0, "steady_states: tol must be positive");
    const Liouvillian liou = build_liouvillian(model);
    const auto eg = linalg::eig(liou.matrix);
    const std::size_t n = model.dim * model.dim;

    // Collect kernel eigenvectors, then Gram-Schmidt in the Frobenius
    // (= flat Euclidean) inner product.
    std::vector<std::vector<cplx>> basis;
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(eg.values[j]) > tol)
            continue;
        std::vector<cplx> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = eg.vectors(i, j);
        for (const auto& b : basis) {
            cplx ov{0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i)
                ov += std::conj(b[i]) * v[i];
            for (std::size_t i = 0; i < n; ++i)
                v[i] -= ov * b[i];
        }
        double nrm = 0.0;
        for (const cplx& z : v)
            nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-6)
            continue;  // numerically dependent duplicate
        for (cplx& z : v)
            z /= nrm;
        basis.push_back(std::move(v));
    }
    require(!basis.empty(),
            "steady_states: empty kernel signals a construction bug");

    std::vector<ComplexMatrix> out;
    out.reserve(basis.size());
    for (const auto& v : basis)
        out.push_back(unvec_column(v, model.dim));
    return out;
}

LindbladModel two_qubit_thermal_model(double n_bar, double gamma) {
    require(n_bar >= 0.0 && std::isfinite(n_bar),
            "two_qubit_thermal_model: n_bar must be >= 0");
    require(gamma > 0.0, "two_qubit_thermal_model: Gamma must be positive");
    const ComplexMatrix j_minus = collective_lowering();
    std::vector<Dissipator> ds;
    ds.push_back({gamma, std::sqrt(n_bar + 1.0) * j_minus});
    if (n_bar > 0.0)
        ds.push_back({gamma, std::sqrt(n_bar) * j_minus.adjoint()});
    return LindbladModel::make(ComplexMatrix(4, 4), std::move(ds));
}

LindbladModel squeezed_reservoir_model(double r, double psi, double gamma) {
    require(r >= 0.0 && std::isfinite(r),
            "squeezed_reservoir_model: r must be >= 0");
    require(gamma > 0.0, "squeezed_reservoir_model: Gamma must be positive");
    const ComplexMatrix j_minus = collective_lowering();
    const cplx phase = std::exp(kI * psi);
    ComplexMatrix l = std::cosh(r) * j_minus -
                      (std::sinh(r) * phase) * j_minus.adjoint();
    return LindbladModel::make(ComplexMatrix(4, 4), {{gamma, std::move(l)}});
}

LindbladModel qubit_thermal_model(double gamma0_tilde, double T_tilde) {
    const ThermalRates rates = thermal_rates(gamma0_tilde, T_tilde);
    ComplexMatrix h{{-0.5, 0.0}, {0.0, 0.5}};
    ComplexMatrix decay{{0.0, 1.0}, {0.0, 0.0}};
    ComplexMatrix excite{{0.0, 0.0}, {1.0, 0.0}};
    return LindbladModel::make(
        std::move(h),
        {{rates.gamma_plus, std::move(decay)}, {rates.gamma_minus, std::move(excite)}});
}

SteadyStateMap SteadyStateMap::build(const LindbladModel& model) {
    const Liouvillian liou = build_liouvillian(model);
    const std::size_t n = liou.matrix.rows();
    const auto schur = linalg::schur_kernel_first(liou.matrix, 1e-10);
    const std::size_t k = schur.n_kernel;
    require(k >= 1, "steady_state_map: empty kernel");

    double gap = 0.0;
    if (k < n) {
        double max_re = schur.values[k].real();
        for (std::size_t i = k; i < n; ++i)
            max_re = std::max(max_re, schur.values[i].real());
        require(max_re <= 1e-10,
                "steady_state_map: eigenvalue with positive real part");
        require(max_re < -1e-8, "steady_state_map: vanishing spectral gap");
        gap = -max_re;
    }

    ComplexMatrix p_t(n, n);
    for (std::size_t i = 0; i < k; ++i)
        p_t(i, i) = 1.0;
    if (k < n) {
        ComplexMatrix t11(k, k), t22(n - k, n - k), t12(k, n - k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                t11(i, j) = schur.t(i, j);
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j)
                t22(i - k, j - k) = schur.t(i, j);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = k; j < n; ++j)
                t12(i, j - k) = schur.t(i, j);
        const ComplexMatrix s = linalg::sylvester_triangular(t11, t22, t12);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n - k; ++j)
                p_t(i, k + j) = s(i, j);
    }
    ComplexMatrix projector = schur.q * p_t * schur.q.adjoint();
    return SteadyStateMap(model.dim, std::move(projector), k, gap);
}

DensityOperator SteadyStateMap::apply(const DensityOperator& rho0) const {
    require(rho0.dim() == dim_, "steady_state_map: state dimension mismatch");
    const std::vector<cplx> out = matvec(projector_, vec_column(rho0.matrix()));
    return repair_drift(unvec_column(out, dim_));
}

ComplexMatrix SteadyStateMap::choi() const {
    const std::size_t d = dim_;
    ComplexMatrix c(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            ComplexMatrix e(d, d);
            e(i, j) = 1.0;
            const ComplexMatrix out =
                unvec_column(matvec(projector_, vec_column(e)), d);
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b)
                    c(i * d + a, j * d + b) = out(a, b);
        }
    return 0.5 * (c + c.adjoint());
}

double SteadyStateMap::choi_min_eigenvalue() const {
    return linalg::eigh(choi()).values.front();
}

bool SteadyStateMap::is_completely_positive(double tol) const {
    return choi_min_eigenvalue() >= -tol;
}

std::optional<KrausChannel> SteadyStateMap::kraus_form(double cp_tol) const {
    const ComplexMatrix c = choi();
    const auto eg = linalg::eigh(c);
    if (eg.values.front() < -cp_tol)
        return std::nullopt;
    KrausChannel ch{dim_, {}, "steady_state_map"};
    const std::size_t n = dim_ * dim_;
    for (std::size_t idx = 0; idx < n; ++idx) {
        const double lambda = eg.values[idx];
        if (lambda <= 1e-12)
            continue;
        const double w = std::sqrt(lambda);
        ComplexMatrix k(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t a = 0; a < dim_; ++a)
                k(a, i) = w * eg.vectors(i * dim_ + a, idx);
        ch.kraus_ops.push_back(std::move(k));
    }
    return ch;
}

}  // namespace dqml
