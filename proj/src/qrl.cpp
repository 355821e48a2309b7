#include "dqml/qrl.hpp"

#include <algorithm>
#include <cmath>

#include "dqml/parallel.hpp"

namespace dqml {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Allocation-free qubit algebra for the per-iteration hot path. The public
// matrix-based operations define the semantics; test_qrl checks this path
// reproduces them step for step.
struct Q2 {
    cplx a0, a1;
};

struct M22 {
    cplx e00, e01, e10, e11;
};

inline Q2 mul(const M22& m, const Q2& v) {
    return {m.e00 * v.a0 + m.e01 * v.a1, m.e10 * v.a0 + m.e11 * v.a1};
}

inline cplx dotc(const Q2& a, const Q2& b) {
    return std::conj(a.a0) * b.a0 + std::conj(a.a1) * b.a1;
}

inline Q2 orthogonal(const Q2& v) {
    return {-std::conj(v.a1), std::conj(v.a0)};
}

inline void renormalize(Q2& v) {
    const double n = std::sqrt(std::norm(v.a0) + std::norm(v.a1));
    v.a0 /= n;
    v.a1 /= n;
}

struct Protocol {
    std::array<M22, 4> ops;  // U * K_j, computational basis
    Q2 minus, plus;
    double reward_rate;
    double punishment_rate;

    Protocol(const QrlParams& params, const EnvBasis& basis) {
        params.validate();
        const QrlChannel ch = qrl_channel(params, basis);
        for (std::size_t j = 0; j < 4; ++j) {
            const ComplexMatrix m = ch.unitary * ch.noise.kraus_ops[j];
            ops[j] = {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
        }
        minus = {basis.minus[0], basis.minus[1]};
        plus = {basis.plus[0], basis.plus[1]};
        reward_rate = params.reward_rate;
        punishment_rate = params.punishment_rate;
    }

    // Exploration coefficients of R_k phi_k in the frame {phi_k, phi_perp}:
    // the frame operators are the standard Paulis there, so the composed
    // rotation acts on (1, 0).
    static Q2 rotation_coeffs(double ax, double ay, double az) {
        const double cx = std::cos(0.5 * ax), sx = std::sin(0.5 * ax);
        Q2 v{cplx{cx, 0.0}, cplx{0.0, -sx}};
        const cplx pz = std::polar(1.0, -0.5 * az);
        v.a0 *= pz;
        v.a1 *= std::conj(pz);
        const double cy = std::cos(0.5 * ay), sy = std::sin(0.5 * ay);
        return {cy * v.a0 - sy * v.a1, sy * v.a0 + cy * v.a1};
    }

    void step(Q2& phi, double& w, Rng& rng, IterationRecord& rec) const {
        const Q2 perp = orthogonal(phi);
        double p1 = 0.0;
        for (const M22& op : ops)
            p1 += std::norm(dotc(perp, mul(op, phi)));
        p1 = std::clamp(p1, 0.0, 1.0);

        rec.w = w;
        rec.f_minus = std::min(std::abs(dotc(minus, phi)), 1.0);
        rec.f_plus = std::min(std::abs(dotc(plus, phi)), 1.0);
        rec.f = std::max(rec.f_minus, rec.f_plus);

        const double u = rng.uniform();
        if (u < p1) {
            rec.outcome = 1;
            const double bound = w * kPi;
            const double ax = rng.uniform(-bound, bound);
            const double ay = rng.uniform(-bound, bound);
            const double az = rng.uniform(-bound, bound);
            const Q2 c = rotation_coeffs(ax, ay, az);
            phi = {c.a0 * phi.a0 + c.a1 * perp.a0, c.a0 * phi.a1 + c.a1 * perp.a1};
            renormalize(phi);
            w = std::min(1.0, punishment_rate * w);
        } else {
            rec.outcome = 0;
            w = reward_rate * w;
        }
    }
};

}  // namespace

void QrlParams::validate() const {
    require(gamma0_tilde >= 0.0 && std::isfinite(gamma0_tilde),
            "qrl: gamma0_tilde must be finite and >= 0");
    require(T_tilde >= 0.0 && std::isfinite(T_tilde),
            "qrl: T_tilde must be finite and >= 0");
    require(tau_tilde >= 0.0 && std::isfinite(tau_tilde),
            "qrl: tau_tilde must be finite and >= 0");
    require(reward_rate > 0.0 && reward_rate < 1.0,
            "qrl: reward_rate must lie in (0,1)");
    require(punishment_rate > 1.0, "qrl: punishment_rate must exceed 1");
    require(n_realizations >= 1 && n_iterations >= 1,
            "qrl: n_realizations and n_iterations must be >= 1");
    require(initial_state.dim() == 2, "qrl: initial state must be a qubit");
}

EnvBasis EnvBasis::from_angles(double polar, double azimuth) {
    const double c = std::cos(0.5 * polar);
    const double s = std::sin(0.5 * polar);
    const cplx ph = std::polar(1.0, azimuth);
    PureState minus = PureState::normalized({cplx{c, 0.0}, s * ph});
    PureState plus = PureState::normalized({-s * std::conj(ph), cplx{c, 0.0}});
    return {std::move(minus), std::move(plus)};
}

EnvBasis EnvBasis::standard() { return from_angles(1.0, 0.5); }

ComplexMatrix EnvBasis::unitary() const {
    return {{minus[0], plus[0]}, {minus[1], plus[1]}};
}

ComplexMatrix environment_hamiltonian(const EnvBasis& basis) {
    ComplexMatrix h(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            h(i, j) = 0.5 * (basis.plus[i] * std::conj(basis.plus[j]) -
                             basis.minus[i] * std::conj(basis.minus[j]));
    return h;
}

QrlChannel qrl_channel(const QrlParams& params, const EnvBasis& basis) {
    params.validate();
    const ComplexMatrix v = basis.unitary();
    const ComplexMatrix vdag = v.adjoint();
    KrausChannel gad = generalized_amplitude_damping(
        {params.gamma0_tilde, params.T_tilde, params.tau_tilde});
    for (ComplexMatrix& k : gad.kraus_ops)
        k = v * k * vdag;
    gad.label = "qrl_noise";

    // U = e^{-i tau H}: eigenphases +tau/2 on |->, -tau/2 on |+>.
    ComplexMatrix phases(2, 2);
    phases(0, 0) = std::polar(1.0, 0.5 * params.tau_tilde);
    phases(1, 1) = std::polar(1.0, -0.5 * params.tau_tilde);
    ComplexMatrix u = v * phases * vdag;
    return {std::move(gad), std::move(u)};
}

DensityOperator QrlChannel::apply(const DensityOperator& rho) const {
    return evolve_unitary(apply_channel(noise, rho), unitary);
}

ComplexMatrix pseudorandom_rotation(const PureState& phi, double w,
                                    const std::array<double, 3>& angles) {
    require(phi.dim() == 2, "pseudorandom_rotation: qubit states only");
    require(w >= 0.0 && w <= 1.0, "pseudorandom_rotation: w outside [0,1]");
    const double bound = w * kPi + 1e-12;
    for (double a : angles)
        require(std::abs(a) <= bound, "pseudorandom_rotation: angle out of range");

    const PureState perp = orthogonal_qubit(phi);
    ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            const cplx pp = phi[i] * std::conj(phi[j]);
            const cplx qq = perp[i] * std::conj(perp[j]);
            const cplx pq = phi[i] * std::conj(perp[j]);
            const cplx qp = perp[i] * std::conj(phi[j]);
            sx(i, j) = pq + qp;
            sy(i, j) = kI * (qp - pq);
            sz(i, j) = pp - qq;
        }
    const ComplexMatrix ident = ComplexMatrix::identity(2);
    auto axis_rot = [&](const ComplexMatrix& sigma, double a) {
        return std::cos(0.5 * a) * ident - (kI * std::sin(0.5 * a)) * sigma;
    };
    return axis_rot(sy, angles[1]) * axis_rot(sz, angles[2]) * axis_rot(sx, angles[0]);
}

std::pair<AgentState, IterationRecord> iteration_step(const AgentState& state,
                                                      const QrlParams& params,
                                                      Rng& rng,
                                                      const EnvBasis& basis) {
    params.validate();
    require(state.phi.dim() == 2 && state.w >= 0.0 && state.w <= 1.0,
            "iteration_step: invalid agent state");
    const QrlChannel channel = qrl_channel(params, basis);
    const DensityOperator rho = channel.apply(DensityOperator::from_pure(state.phi));

    const PureState perp = orthogonal_qubit(state.phi);
    ComplexMatrix proj(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            proj(i, j) = perp[i] * std::conj(perp[j]);

    IterationRecord rec;
    rec.w = state.w;
    rec.f_minus = fidelity(basis.minus, state.phi);
    rec.f_plus = fidelity(basis.plus, state.phi);
    rec.f = std::max(rec.f_minus, rec.f_plus);

    const double u = rng.uniform();
    const MeasureResult mr = projective_measure(rho, proj, u);
    rec.outcome = mr.outcome;
    if (mr.outcome == 0)
        return {{state.phi, params.reward_rate * state.w}, rec};

    // Punished: sigma_x brings the agent back to phi_k, then explore.
    const double bound = state.w * kPi;
    const std::array<double, 3> angles{rng.uniform(-bound, bound),
                                       rng.uniform(-bound, bound),
                                       rng.uniform(-bound, bound)};
    const ComplexMatrix r = pseudorandom_rotation(state.phi, state.w, angles);
    std::vector<cplx> next{r(0, 0) * state.phi[0] + r(0, 1) * state.phi[1],
                           r(1, 0) * state.phi[0] + r(1, 1) * state.phi[1]};
    return {{PureState::normalized(std::move(next)),
             std::min(1.0, params.punishment_rate * state.w)},
            rec};
}

QrlTrace run_realization(const QrlParams& params, std::size_t realization_index,
                         const EnvBasis& basis) {
    const Protocol proto(params, basis);
    Rng rng(derive_stream_seed(params.master_seed, realization_index));
    Q2 phi{params.initial_state[0], params.initial_state[1]};
    double w = 1.0;

    const std::size_t k_max = params.n_iterations;
    QrlTrace trace;
    trace.w.resize(k_max);
    trace.f_minus.resize(k_max);
    trace.f_plus.resize(k_max);
    trace.f.resize(k_max);
    trace.outcome.resize(k_max);
    IterationRecord rec;
    for (std::size_t k = 0; k < k_max; ++k) {
        proto.step(phi, w, rng, rec);
        trace.w[k] = rec.w;
        trace.f_minus[k] = rec.f_minus;
        trace.f_plus[k] = rec.f_plus;
        trace.f[k] = rec.f;
        trace.outcome[k] = rec.outcome;
    }
    return trace;
}

QrlAggregate run_ensemble(const QrlParams& params, unsigned n_threads,
                          const EnvBasis& basis) {
    params.validate();
    const Protocol proto(params, basis);
    const std::size_t n = params.n_realizations;
    const std::size_t k_max = params.n_iterations;
    const std::size_t window = std::max<std::size_t>(1, k_max / 10);

    struct ChunkSums {
        std::vector<double> sum_w, sum_fm, sum_fp, sum_f;
        std::vector<double> sq_w, sq_fm, sq_fp, sq_f;
        double sum_wbar = 0.0, sq_wbar = 0.0, sum_fbar = 0.0, sq_fbar = 0.0;
    };
    const std::size_t chunk_size = 16;
    const std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
    std::vector<ChunkSums> chunks(n_chunks);

    parallel_chunks(n, chunk_size, n_threads,
                    [&](std::size_t c, std::size_t begin, std::size_t end) {
        ChunkSums& cs = chunks[c];
        cs.sum_w.assign(k_max, 0.0);
        cs.sum_fm.assign(k_max, 0.0);
        cs.sum_fp.assign(k_max, 0.0);
        cs.sum_f.assign(k_max, 0.0);
        cs.sq_w.assign(k_max, 0.0);
        cs.sq_fm.assign(k_max, 0.0);
        cs.sq_fp.assign(k_max, 0.0);
        cs.sq_f.assign(k_max, 0.0);
        IterationRecord rec;
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng(derive_stream_seed(params.master_seed, i));
            Q2 phi{params.initial_state[0], params.initial_state[1]};
            double w = 1.0;
            double wbar = 0.0, fbar = 0.0;
            for (std::size_t k = 0; k < k_max; ++k) {
                proto.step(phi, w, rng, rec);
                cs.sum_w[k] += rec.w;
                cs.sum_fm[k] += rec.f_minus;
                cs.sum_fp[k] += rec.f_plus;
                cs.sum_f[k] += rec.f;
                cs.sq_w[k] += rec.w * rec.w;
                cs.sq_fm[k] += rec.f_minus * rec.f_minus;
                cs.sq_fp[k] += rec.f_plus * rec.f_plus;
                cs.sq_f[k] += rec.f * rec.f;
                if (k + window >= k_max) {
                    wbar += rec.w;
                    fbar += rec.f;
                }
            }
            wbar /= static_cast<double>(window);
            fbar /= static_cast<double>(window);
            cs.sum_wbar += wbar;
            cs.sq_wbar += wbar * wbar;
            cs.sum_fbar += fbar;
            cs.sq_fbar += fbar * fbar;
        }
    });

    // Fixed-order reduction.
    QrlAggregate agg;
    agg.window = window;
    std::vector<double> sw(k_max, 0.0), sfm(k_max, 0.0), sfp(k_max, 0.0), sf(k_max, 0.0);
    std::vector<double> qw(k_max, 0.0), qfm(k_max, 0.0), qfp(k_max, 0.0), qf(k_max, 0.0);
    double s_wbar = 0.0, q_wbar = 0.0, s_fbar = 0.0, q_fbar = 0.0;
    for (const ChunkSums& cs : chunks) {
        for (std::size_t k = 0; k < k_max; ++k) {
            sw[k] += cs.sum_w[k];
            sfm[k] += cs.sum_fm[k];
            sfp[k] += cs.sum_fp[k];
            sf[k] += cs.sum_f[k];
            qw[k] += cs.sq_w[k];
            qfm[k] += cs.sq_fm[k];
            qfp[k] += cs.sq_fp[k];
            qf[k] += cs.sq_f[k];
        }
        s_wbar += cs.sum_wbar;
        q_wbar += cs.sq_wbar;
        s_fbar += cs.sum_fbar;
        q_fbar += cs.sq_fbar;
    }
    const double dn = static_cast<double>(n);
    auto stderr_of = [&](double sum, double sumsq) {
        if (n < 2)
            return 0.0;
        const double var = std::max(0.0, (sumsq - sum * sum / dn) / (dn - 1.0));
        return std::sqrt(var / dn);
    };
    agg.w_mean.resize(k_max);
    agg.f_minus_mean.resize(k_max);
    agg.f_plus_mean.resize(k_max);
    agg.f_mean.resize(k_max);
    agg.w_stderr.resize(k_max);
    agg.f_minus_stderr.resize(k_max);
    agg.f_plus_stderr.resize(k_max);
    agg.f_stderr.resize(k_max);
    for (std::size_t k = 0; k < k_max; ++k) {
        agg.w_mean[k] = sw[k] / dn;
        agg.f_minus_mean[k] = sfm[k] / dn;
        agg.f_plus_mean[k] = sfp[k] / dn;
        agg.f_mean[k] = sf[k] / dn;
        agg.w_stderr[k] = stderr_of(sw[k], qw[k]);
        agg.f_minus_stderr[k] = stderr_of(sfm[k], qfm[k]);
        agg.f_plus_stderr[k] = stderr_of(sfp[k], qfp[k]);
        agg.f_stderr[k] = stderr_of(sf[k], qf[k]);
    }
    agg.w_asymptotic = s_wbar / dn;
    agg.w_asymptotic_stderr = stderr_of(s_wbar, q_wbar);
    agg.f_asymptotic = s_fbar / dn;
    agg.f_asymptotic_stderr = stderr_of(s_fbar, q_fbar);
    return agg;
}

std::vector<SweepRow> sweep_tau(const QrlParams& base,
                                const std::vector<double>& tau_grid,
                                const std::vector<SweepConfig>& configs,
                                unsigned n_threads, const EnvBasis& basis) {
    std::vector<SweepRow> rows;
    rows.reserve(tau_grid.size() * configs.size());
    for (std::size_t c = 0; c < configs.size(); ++c) {
        for (std::size_t i = 0; i < tau_grid.size(); ++i) {
            QrlParams params = base;
            params.gamma0_tilde = configs[c].gamma0_tilde;
            params.T_tilde = configs[c].T_tilde;
            params.tau_tilde = tau_grid[i];
            params.master_seed =
                derive_stream_seed(base.master_seed, c * 1000003ULL + i);
            const QrlAggregate agg = run_ensemble(params, n_threads, basis);
            rows.push_back({tau_grid[i], params.gamma0_tilde, params.T_tilde,
                            agg.f_asymptotic, agg.f_asymptotic_stderr,
                            agg.w_asymptotic, agg.w_asymptotic_stderr});
        }
    }
    return rows;
}

}  // namespace dqml
