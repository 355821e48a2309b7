#include "dqml/channels.hpp"

#include <cmath>

#include "dqml/kernels.hpp"
#include "dqml/linalg.hpp"

namespace dqml {

ThermalRates thermal_rates(double gamma0_tilde, double T_tilde) {
    require(gamma0_tilde >= 0.0 && T_tilde >= 0.0 &&
                std::isfinite(gamma0_tilde) && std::isfinite(T_tilde),
            "thermal_rates: rates and temperature must be finite and nonnegative");
    if (T_tilde <= 0.0)
        return {gamma0_tilde, 0.0};
    const double x = 1.0 / (2.0 * T_tilde);
    if (x > 350.0)
        return {gamma0_tilde, 0.0};
    // gamma_pm = (gamma0/2) e^{+-x} csch(x), written without large exponentials
    const double e2 = std::exp(-2.0 * x);
    return {gamma0_tilde / (1.0 - e2), gamma0_tilde * e2 / (1.0 - e2)};
}

DensityOperator apply_channel(const KrausChannel& ch, const DensityOperator& rho) {
    require(ch.dim == rho.dim(), "apply_channel: dimension mismatch");
    require(!ch.kraus_ops.empty(), "apply_channel: empty channel");
    const std::size_t n = ch.dim;
    ComplexMatrix out(n, n), tmp(n, n);
    for (const ComplexMatrix& k : ch.kraus_ops) {
        kern::active().gemm(n, tmp.data(), k.data(), rho.matrix().data());
        kern::active().gemm_adjb_acc(n, out.data(), tmp.data(), k.data());
    }
    return DensityOperator::from_matrix(std::move(out));
}

bool validate_completeness(const KrausChannel& ch, double tol) {
    require(tol > 0.0, "validate_completeness: tol must be positive");
    const std::size_t n = ch.dim;
    ComplexMatrix sum(n, n);
    for (const ComplexMatrix& k : ch.kraus_ops)
        sum += k.adjoint() * k;
    return (sum - ComplexMatrix::identity(n)).frobenius_norm() <= tol;
}

KrausChannel amplitude_damping(double p) {
    require(p >= 0.0 && p <= 1.0, "amplitude_damping: p outside [0,1]");
    ComplexMatrix k0{{1.0, 0.0}, {0.0, std::sqrt(1.0 - p)}};
    ComplexMatrix k1{{0.0, std::sqrt(p)}, {0.0, 0.0}};
    return {2, {k0, k1}, "amplitude_damping"};
}

KrausChannel phase_damping(double p) {
    require(p >= 0.0 && p <= 1.0, "phase_damping: p outside [0,1]");
    const double s = std::sqrt(1.0 - p);
    const double q = std::sqrt(p);
    ComplexMatrix k0{{s, 0.0}, {0.0, s}};
    ComplexMatrix k1{{q, 0.0}, {0.0, 0.0}};
    ComplexMatrix k2{{0.0, 0.0}, {0.0, q}};
    return {2, {k0, k1, k2}, "phase_damping"};
}

KrausChannel depolarizing(double p) {
    require(p >= 0.0 && p <= 1.0, "depolarizing: p outside [0,1]");
    const double s = std::sqrt(1.0 - p);
    const double q = std::sqrt(p / 3.0);
    KrausChannel ch{2, {}, "depolarizing"};
    ch.kraus_ops.push_back(ComplexMatrix{{s, 0.0}, {0.0, s}});
    ch.kraus_ops.push_back(q * pauli_x());
    ch.kraus_ops.push_back(q * pauli_y());
    ch.kraus_ops.push_back(q * pauli_z());
    return ch;
}

KrausChannel generalized_amplitude_damping(const GadParams& params) {
    require(params.tau_tilde >= 0.0 && std::isfinite(params.tau_tilde),
            "generalized_amplitude_damping: tau must be finite and nonnegative");
    const ThermalRates rates = thermal_rates(params.gamma0_tilde, params.T_tilde);
    const double total = rates.gamma_plus + rates.gamma_minus;
    const double q = total > 0.0 ? rates.gamma_minus / total : 0.0;
    const double gamma = -std::expm1(-total * params.tau_tilde);

    const double sq = std::sqrt(q);
    const double sqc = std::sqrt(1.0 - q);
    const double g = std::sqrt(gamma);
    const double gc = std::sqrt(1.0 - gamma);
    KrausChannel ch{2, {}, "gad"};
    ch.kraus_ops.push_back(sqc * ComplexMatrix{{1.0, 0.0}, {0.0, gc}});
    ch.kraus_ops.push_back(sqc * ComplexMatrix{{0.0, g}, {0.0, 0.0}});
    ch.kraus_ops.push_back(sq * ComplexMatrix{{gc, 0.0}, {0.0, 1.0}});
    ch.kraus_ops.push_back(sq * ComplexMatrix{{0.0, 0.0}, {g, 0.0}});
    return ch;
}

KrausChannel kraus_from_dilation(const ComplexMatrix& u_c,
                                 const DensityOperator& rho_e0,
                                 std::size_t d_s, std::size_t d_e) {
    require(d_s >= 1 && d_e >= 1 && u_c.square() && u_c.rows() == d_s * d_e,
            "kraus_from_dilation: invalid dims");
    require(rho_e0.dim() == d_e, "kraus_from_dilation: environment dim mismatch");
    require(u_c.is_unitary(1e-10), "kraus_from_dilation: U_C is not unitary");

    const auto env = linalg::eigh(rho_e0.matrix());
    KrausChannel ch{d_s, {}, "dilation"};
    for (std::size_t beta = 0; beta < d_e; ++beta) {
        const double lambda = env.values[beta];
        if (lambda <= 1e-12)
            continue;
        const double w = std::sqrt(lambda);
        for (std::size_t alpha = 0; alpha < d_e; ++alpha) {
            ComplexMatrix k(d_s, d_s);
            for (std::size_t l = 0; l < d_s; ++l)
                for (std::size_t m = 0; m < d_s; ++m) {
                    cplx s{0.0, 0.0};
                    for (std::size_t a = 0; a < d_e; ++a)
                        for (std::size_t b = 0; b < d_e; ++b)
                            s += std::conj(env.vectors(a, alpha)) *
                                 u_c(l * d_e + a, m * d_e + b) *
                                 env.vectors(b, beta);
                    k(l, m) = w * s;
                }
            ch.kraus_ops.push_back(std::move(k));
        }
    }
    require(validate_completeness(ch, 1e-10),
            "kraus_from_dilation: completeness violated after weight cutoff");
    return ch;
}

KrausChannel make_channel(const std::string& name, double p) {
    if (name == "amplitude_damping")
        return amplitude_damping(p);
    if (name == "phase_damping")
        return phase_damping(p);
    if (name == "depolarizing")
        return depolarizing(p);
    throw Error("make_channel: unknown channel '" + name + "'");
}

}  // namespace dqml
