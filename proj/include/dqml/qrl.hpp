#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "dqml/channels.hpp"
#include "dqml/qcore.hpp"
#include "dqml/rng.hpp"

// Dissipative quantum reinforcement learning: a qubit agent repeatedly
// evolves through a thermal channel, is measured against its own frame,
// and explores by bounded pseudorandom rotations whose range shrinks on
// reward and grows on punishment.

namespace dqml {

struct QrlParams {
    double gamma0_tilde = 0.0;
    double T_tilde = 0.0;
    double tau_tilde = 1.0;
    double reward_rate = 0.9;          // in (0,1)
    double punishment_rate = 20.0 / 9.0;  // > 1
    std::size_t n_realizations = 1000;
    std::size_t n_iterations = 500;
    PureState initial_state = PureState::basis_state(2, 0);
    std::uint64_t master_seed = 20240915ULL;

    void validate() const;
};

/// Orthonormal eigenbasis {|->, |+>} of the environment Hamiltonian. The
/// default is the computational basis rotated by polar angle 1.0 and
/// azimuth 0.5 so that the conventional |0> start state is generic.
struct EnvBasis {
    PureState minus;
    PureState plus;

    static EnvBasis from_angles(double polar, double azimuth);
    static EnvBasis standard();

    /// Unitary with columns (|->, |+>).
    ComplexMatrix unitary() const;
};

/// H = (1/2)(|+><+| - |-><-|), dimensionless.
ComplexMatrix environment_hamiltonian(const EnvBasis& basis = EnvBasis::standard());

/// rho -> U GAD(rho) U^dagger with U = e^{-i tau H}; the damping acts in
/// the environment eigenbasis.
struct QrlChannel {
    KrausChannel noise;     // damping conjugated into the eigenbasis
    ComplexMatrix unitary;  // e^{-i tau H}

    DensityOperator apply(const DensityOperator& rho) const;
};

QrlChannel qrl_channel(const QrlParams& params,
                       const EnvBasis& basis = EnvBasis::standard());

/// Composed exploration rotation about the agent frame {phi, phi_perp}:
/// exp(-i a_y s_y/2) exp(-i a_z s_z/2) exp(-i a_x s_x/2). Each |angle|
/// must not exceed w * pi.
ComplexMatrix pseudorandom_rotation(const PureState& phi, double w,
                                    const std::array<double, 3>& angles);

struct AgentState {
    PureState phi;
    double w = 1.0;  // exploration parameter in [0,1]
};

struct IterationRecord {
    double w;        // exploration parameter entering the iteration
    double f_minus;  // |<-|phi_k>|
    double f_plus;   // |<+|phi_k>|
    double f;        // max of the two
    int outcome;     // measured m_k
};

/// One protocol iteration; all randomness comes from rng.
std::pair<AgentState, IterationRecord> iteration_step(
    const AgentState& state, const QrlParams& params, Rng& rng,
    const EnvBasis& basis = EnvBasis::standard());

struct QrlTrace {
    std::vector<double> w, f_minus, f_plus, f;
    std::vector<int> outcome;
};

/// Full K-iteration trace for one realization; the realization's RNG
/// stream is derived from (master_seed, realization_index).
QrlTrace run_realization(const QrlParams& params, std::size_t realization_index,
                         const EnvBasis& basis = EnvBasis::standard());

struct QrlAggregate {
    std::vector<double> w_mean, f_minus_mean, f_plus_mean, f_mean;
    std::vector<double> w_stderr, f_minus_stderr, f_plus_stderr, f_stderr;
    std::size_t window = 0;  // final iterations entering the asymptotics
    double f_asymptotic = 0.0, f_asymptotic_stderr = 0.0;
    double w_asymptotic = 0.0, w_asymptotic_stderr = 0.0;
};

/// Means over n_realizations independent realizations. Realizations run
/// concurrently; the reduction is order-fixed, so results do not depend
/// on the worker count.
QrlAggregate run_ensemble(const QrlParams& params, unsigned n_threads = 0,
                          const EnvBasis& basis = EnvBasis::standard());

struct SweepConfig {
    double gamma0_tilde;
    double T_tilde;
};

struct SweepRow {
    double tau_tilde, gamma0_tilde, T_tilde;
    double f_a, f_a_stderr, w_a, w_a_stderr;
};

/// run_ensemble per (config, tau) grid point; each point draws its own
/// derived seed stream.
std::vector<SweepRow> sweep_tau(const QrlParams& base,
                                const std::vector<double>& tau_grid,
                                const std::vector<SweepConfig>& configs,
                                unsigned n_threads = 0,
                                const EnvBasis& basis = EnvBasis::standard());

}  // namespace dqml
