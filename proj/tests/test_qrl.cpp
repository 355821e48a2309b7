#include <doctest.h>

#include <cmath>

#include "dqml/lindblad.hpp"
#include "dqml/qrl.hpp"
#include "support/test_rand.hpp"

using namespace dqml;
using testing::random_density;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

EnvBasis computational_basis() { return EnvBasis::from_angles(0.0, 0.0); }

QrlParams small_params() {
    QrlParams p;
    p.n_realizations = 50;
    p.n_iterations = 100;
    return p;
}

}  // namespace

TEST_SUITE("qrl") {

TEST_CASE("environment hamiltonian: matrix form and spectrum") {
    const ComplexMatrix h0 = environment_hamiltonian(computational_basis());
    CHECK(std::abs(h0(0, 0) - cplx{-0.5, 0.0}) < 1e-15);
    CHECK(std::abs(h0(1, 1) - cplx{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(h0(0, 1)) < 1e-15);

    for (double polar : {0.3, 1.0, 2.2})
        for (double azimuth : {0.0, 0.5, 2.5}) {
            const EnvBasis basis = EnvBasis::from_angles(polar, azimuth);
            const ComplexMatrix h = environment_hamiltonian(basis);
            CHECK(h.is_hermitian(1e-14));
            // spectrum always {-1/2, +1/2}
            CHECK(std::abs(h.trace()) < 1e-14);
            const cplx det = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
            CHECK(std::abs(det - cplx{-0.25, 0.0}) < 1e-14);
            // V diag(-1/2,+1/2) V^dagger reproduces it
            const ComplexMatrix v = basis.unitary();
            ComplexMatrix diag(2, 2);
            diag(0, 0) = -0.5;
            diag(1, 1) = 0.5;
            CHECK((v * diag * v.adjoint() - h).max_abs() < 1e-14);
            CHECK(v.is_unitary(1e-14));
        }
}

TEST_CASE("qrl channel: full-period rotation without damping is the identity") {
    Rng rng(41);
    QrlParams p;
    p.gamma0_tilde = 0.0;
    p.tau_tilde = kTwoPi;
    const QrlChannel ch = qrl_channel(p);
    for (int rep = 0; rep < 5; ++rep) {
        const DensityOperator rho = random_density(rng, 2);
        CHECK((ch.apply(rho).matrix() - rho.matrix()).max_abs() < 1e-12);
    }
}

TEST_CASE("qrl channel: long zero-temperature evolution lands on the ground state") {
    Rng rng(42);
    QrlParams p;
    p.gamma0_tilde = 0.5;
    p.T_tilde = 0.0;
    p.tau_tilde = 80.0;
    const EnvBasis basis = EnvBasis::standard();
    const QrlChannel ch = qrl_channel(p, basis);
    const DensityOperator ground = DensityOperator::from_pure(basis.minus);
    for (int rep = 0; rep < 5; ++rep) {
        const DensityOperator rho = random_density(rng, 2);
        CHECK(trace_distance(ch.apply(rho), ground) < 1e-10);
    }
}

TEST_CASE("qrl channel matches the thermal-qubit master equation") {
    Rng rng(43);
    QrlParams p;
    p.gamma0_tilde = 0.5;
    p.T_tilde = 0.3;
    p.tau_tilde = 1.0;
    const QrlChannel ch = qrl_channel(p, computational_basis());
    const LindbladModel m = qubit_thermal_model(p.gamma0_tilde, p.T_tilde);
    for (int rep = 0; rep < 10; ++rep) {
        const DensityOperator rho = random_density(rng, 2);
        CHECK(trace_distance(ch.apply(rho), evolve(m, rho, p.tau_tilde)) < 1e-8);
    }
}

TEST_CASE("ground state is an exact fixed point at zero temperature") {
    const EnvBasis basis = EnvBasis::standard();
    QrlParams p;
    p.gamma0_tilde = 0.8;
    p.T_tilde = 0.0;
    p.tau_tilde = 1.7;
    const QrlChannel ch = qrl_channel(p, basis);
    const DensityOperator ground = DensityOperator::from_pure(basis.minus);
    CHECK(trace_distance(ch.apply(ground), ground) < 1e-12);

    // At small T it stays an approximate fixed point.
    p.T_tilde = 0.05;
    const QrlChannel warm = qrl_channel(p, basis);
    const double drift = trace_distance(warm.apply(ground), ground);
    const double bound =
        thermal_rates(p.gamma0_tilde, p.T_tilde).gamma_minus * p.tau_tilde;
    CHECK(drift < 10.0 * bound + 1e-12);
}

TEST_CASE("pseudorandom rotation: identity, half-turn and small angles") {
    const PureState zero = PureState::basis_state(2, 0);
    const ComplexMatrix r0 = pseudorandom_rotation(zero, 0.0, {0.0, 0.0, 0.0});
    CHECK((r0 - ComplexMatrix::identity(2)).max_abs() < 1e-15);

    // Half-turn about the frame x-axis in the computational frame: -iX.
    const ComplexMatrix rx = pseudorandom_rotation(zero, 1.0, {kPi, 0.0, 0.0});
    CHECK(std::abs(rx(0, 1) - cplx{0.0, -1.0}) < 1e-14);
    CHECK(std::abs(rx(1, 0) - cplx{0.0, -1.0}) < 1e-14);
    CHECK(std::abs(rx(0, 0)) < 1e-14);

    Rng rng(44);
    for (int rep = 0; rep < 10; ++rep) {
        const PureState phi = testing::random_pure(rng, 2);
        const ComplexMatrix r =
            pseudorandom_rotation(phi, 0.33, {0.01, 0.02, -0.01});
        CHECK(r.is_unitary(1e-12));
        const cplx amp = r(0, 0) * std::norm(phi[0]) +
                         r(0, 1) * std::conj(phi[0]) * phi[1] +
                         r(1, 0) * phi[0] * std::conj(phi[1]) +
                         r(1, 1) * std::norm(phi[1]);
        CHECK(std::abs(amp) >= 1.0 - 3e-4);
    }

    CHECK_THROWS_AS(pseudorandom_rotation(zero, 0.1, {0.5, 0.0, 0.0}), Error);
}

TEST_CASE("iteration step: reward branch keeps the state and shrinks w") {
    // Noiseless channel, phi = eigenstate: the punishment probability is 0.
    const EnvBasis basis = EnvBasis::standard();
    QrlParams p;
    p.gamma0_tilde = 0.0;
    p.tau_tilde = 0.9;
    Rng rng(45);
    const AgentState start{basis.minus, 0.7};
    const auto [next, rec] = iteration_step(start, p, rng, basis);
    CHECK(rec.outcome == 0);
    CHECK(next.w == doctest::Approx(0.7 * p.reward_rate).epsilon(1e-15));
    CHECK(fidelity(next.phi, basis.minus) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rec.f_minus == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("iteration step: punishment with w = 0 is absorbing") {
    // Drive the punishment probability up with a large rotation angle state
    // and scan seeds until an m = 1 outcome occurs.
    const EnvBasis basis = EnvBasis::standard();
    QrlParams p;
    p.gamma0_tilde = 1.5;
    p.T_tilde = 2.0;
    p.tau_tilde = 2.0;
    const PureState phi = PureState::basis_state(2, 0);
    bool saw_punishment = false;
    for (std::uint64_t seed = 0; seed < 64 && !saw_punishment; ++seed) {
        Rng rng(seed);
        const auto [next, rec] = iteration_step({phi, 0.0}, p, rng, basis);
        if (rec.outcome == 1) {
            saw_punishment = true;
            CHECK(next.w == 0.0);
            CHECK(fidelity(next.phi, phi) == doctest::Approx(1.0).epsilon(1e-12));
        } else {
            CHECK(next.w == 0.0);
        }
    }
    CHECK(saw_punishment);
}

TEST_CASE("fidelity record pythagorean identity") {
    Rng rng(46);
    QrlParams p = small_params();
    p.gamma0_tilde = 0.5;
    p.T_tilde = 0.3;
    p.tau_tilde = 1.0;
    const QrlTrace trace = run_realization(p, 3);
    for (std::size_t k = 0; k < p.n_iterations; ++k) {
        const double s = trace.f_minus[k] * trace.f_minus[k] +
                         trace.f_plus[k] * trace.f_plus[k];
        CHECK(std::abs(s - 1.0) < 1e-10);
        CHECK(trace.f[k] == std::max(trace.f_minus[k], trace.f_plus[k]));
        CHECK(trace.w[k] >= 0.0);
        CHECK(trace.w[k] <= 1.0);
    }
}

TEST_CASE("noiseless eigenstate start gives the deterministic reward cascade") {
    QrlParams p = small_params();
    p.gamma0_tilde = 0.0;
    p.tau_tilde = 1.3;
    const EnvBasis basis = EnvBasis::standard();
    p.initial_state = basis.minus;
    const QrlTrace trace = run_realization(p, 0, basis);
    for (std::size_t k = 0; k < p.n_iterations; ++k) {
        CHECK(trace.outcome[k] == 0);
        CHECK(trace.w[k] ==
              doctest::Approx(std::pow(p.reward_rate, double(k))).epsilon(1e-12));
        CHECK(trace.f_minus[k] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("identical (seed, index) reproduces the trace bit for bit") {
    QrlParams p = small_params();
    p.gamma0_tilde = 0.5;
    p.T_tilde = 0.1;
    p.tau_tilde = 2.0;
    const QrlTrace a = run_realization(p, 11);
    const QrlTrace b = run_realization(p, 11);
    for (std::size_t k = 0; k < p.n_iterations; ++k) {
        CHECK(a.w[k] == b.w[k]);
        CHECK(a.f[k] == b.f[k]);
        CHECK(a.outcome[k] == b.outcome[k]);
    }
    const QrlTrace c = run_realization(p, 12);
    bool differs = false;
    for (std::size_t k = 0; k < p.n_iterations; ++k)
        differs |= a.outcome[k] != c.outcome[k];
    CHECK(differs);
}

TEST_CASE("fast path reproduces the public iteration_step route") {
    QrlParams p = small_params();
    p.gamma0_tilde = 0.6;
    p.T_tilde = 0.4;
    p.tau_tilde = 1.1;
    p.n_iterations = 60;
    const EnvBasis basis = EnvBasis::standard();

    const QrlTrace fast = run_realization(p, 5, basis);

    Rng rng(derive_stream_seed(p.master_seed, 5));
    AgentState state{p.initial_state, 1.0};
    for (std::size_t k = 0; k < p.n_iterations; ++k) {
        const auto [next, rec] = iteration_step(state, p, rng, basis);
        CHECK(rec.outcome == fast.outcome[k]);
        CHECK(std::abs(rec.w - fast.w[k]) < 1e-12);
        CHECK(std::abs(rec.f_minus - fast.f_minus[k]) < 1e-11);
        CHECK(std::abs(rec.f_plus - fast.f_plus[k]) < 1e-11);
        state = next;
    }
}

TEST_CASE("ensemble of one equals the single trace") {
    QrlParams p = small_params();
    p.n_realizations = 1;
    p.gamma0_tilde = 0.5;
    p.T_tilde = 0.2;
    p.tau_tilde = 1.0;
    const QrlAggregate agg = run_ensemble(p);
    const QrlTrace trace = run_realization(p, 0);
    for (std::size_t k = 0; k < p.n_iterations; ++k) {
        CHECK(agg.w_mean[k] == trace.w[k]);
        CHECK(agg.f_mean[k] == trace.f[k]);
        CHECK(agg.w_stderr[k] == 0.0);
    }
}

TEST_CASE("ensemble means stay in [0,1] and are worker-count independent") {
    QrlParams p = small_params();
    p.gamma0_tilde = 0.5;
    p.T_tilde = 0.3;
    p.tau_tilde = 1.0;
    const QrlAggregate a = run_ensemble(p, 1);
    const QrlAggregate b = run_ensemble(p, 2);
    for (std::size_t k = 0; k < p.n_iterations; ++k) {
        CHECK(a.w_mean[k] >= 0.0);
        CHECK(a.f_mean[k] <= 1.0);
        CHECK(a.w_mean[k] == b.w_mean[k]);
        CHECK(a.f_minus_mean[k] == b.f_minus_mean[k]);
        CHECK(a.f_stderr[k] == b.f_stderr[k]);
    }
    CHECK(a.f_asymptotic == b.f_asymptotic);
    CHECK(a.w_asymptotic_stderr == b.w_asymptotic_stderr);
}

TEST_CASE("standard errors shrink roughly as 1/sqrt(N)") {
    QrlParams p;
    p.gamma0_tilde = 0.5;
    p.T_tilde = 0.3;
    p.tau_tilde = 1.0;
    p.n_iterations = 60;
    double prev = 0.0;
    std::size_t idx = 0;
    for (std::size_t n : {100, 400, 1600}) {
        p.n_realizations = n;
        const QrlAggregate agg = run_ensemble(p);
        const double se = agg.f_asymptotic_stderr;
        CHECK(se > 0.0);
        if (idx++) {
            CHECK(se < 0.8 * prev);   // strictly shrinking
            CHECK(se > 0.25 * prev);  // not faster than ~1/N
        }
        prev = se;
    }
}

TEST_CASE("reward and punishment updates follow the recorded outcomes") {
    QrlParams p = small_params();
    p.gamma0_tilde = 0.7;
    p.T_tilde = 0.5;
    p.tau_tilde = 1.4;
    const QrlTrace t = run_realization(p, 2);
    for (std::size_t k = 0; k + 1 < p.n_iterations; ++k) {
        if (t.outcome[k] == 0)
            CHECK(t.w[k + 1] == doctest::Approx(p.reward_rate * t.w[k]).epsilon(1e-15));
        else
            CHECK(t.w[k + 1] ==
                  doctest::Approx(std::min(1.0, p.punishment_rate * t.w[k])).epsilon(1e-15));
    }
}

TEST_CASE("dissipative runs around a full period converge") {
    // Figure-2(b)-style check scaled down: w collapses for nearly all
    // realizations at tau ~ 2 pi under weak zero-temperature damping.
    QrlParams p;
    p.gamma0_tilde = 0.5;
    p.T_tilde = 0.01;
    p.tau_tilde = kTwoPi;
    p.n_iterations = 500;
    p.n_realizations = 1;
    int converged = 0;
    const int n = 100;
    for (int i = 0; i < n; ++i) {
        const QrlTrace t = run_realization(p, static_cast<std::size_t>(i));
        converged += t.w[p.n_iterations - 1] < 0.05;
    }
    CHECK(converged >= 90);
}

TEST_CASE("sweep: single point reproduces run_ensemble and stays seed-stable") {
    QrlParams p = small_params();
    const std::vector<double> grid{1.0};
    const std::vector<SweepConfig> configs{{0.5, 0.3}};
    const auto rows = sweep_tau(p, grid, configs);
    REQUIRE(rows.size() == 1);

    QrlParams q = p;
    q.gamma0_tilde = 0.5;
    q.T_tilde = 0.3;
    q.tau_tilde = 1.0;
    q.master_seed = derive_stream_seed(p.master_seed, 0);
    const QrlAggregate agg = run_ensemble(q);
    CHECK(rows[0].f_a == agg.f_asymptotic);
    CHECK(rows[0].w_a == agg.w_asymptotic);

    // Different master seeds agree within 3 combined standard errors.
    QrlParams p2 = p;
    p2.n_realizations = 400;
    QrlParams p3 = p2;
    p3.master_seed = 999;
    const auto r2 = sweep_tau(p2, grid, configs);
    const auto r3 = sweep_tau(p3, grid, configs);
    const double gap = std::abs(r2[0].f_a - r3[0].f_a);
    const double se = std::sqrt(r2[0].f_a_stderr * r2[0].f_a_stderr +
                                r3[0].f_a_stderr * r3[0].f_a_stderr);
    CHECK(gap < 3.0 * se);
}

TEST_CASE("parameter validation") {
    QrlParams p;
    p.reward_rate = 1.5;
    CHECK_THROWS_AS(p.validate(), Error);
    p = QrlParams{};
    p.punishment_rate = 0.5;
    CHECK_THROWS_AS(p.validate(), Error);
    p = QrlParams{};
    p.gamma0_tilde = -0.1;
    CHECK_THROWS_AS(p.validate(), Error);
}

}  // TEST_SUITE
