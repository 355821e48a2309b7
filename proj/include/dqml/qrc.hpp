#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dqml/channels.hpp"
#include "dqml/qcore.hpp"

// Noisy quantum reservoir computing: a seeded random circuit with a noise
// channel after every gate acts as a fixed feature map; local <X_j> and
// <Z_j> expectations feed a ridge-regression readout. Everything is exact
// density-matrix simulation, no measurement shot noise.

namespace dqml {

enum class NoiseKind { None, AmplitudeDamping, PhaseDamping, Depolarizing };

NoiseKind noise_kind_from_string(const std::string& name);
std::string to_string(NoiseKind kind);

struct ReservoirConfig {
    unsigned n_qubits = 4;  // [2, 8]
    std::optional<std::size_t> n_gates;  // unset: 10 * n_qubits
    NoiseKind noise_kind = NoiseKind::None;
    double error_probability = 0.0;  // [0, 1]
    std::uint64_t circuit_seed = 1;

    std::size_t gate_count() const {
        return n_gates ? *n_gates : std::size_t{10} * n_qubits;
    }
    void validate() const;
};

struct Gate {
    enum class Kind { RotX, RotY, RotZ, Cnot };
    Kind kind;
    unsigned qubit;    // target for Cnot
    unsigned control;  // Cnot only
    double angle;      // rotations only
};

/// Deterministic in circuit_seed. Two-qubit gates appear with probability
/// 0.4; rotations pick a uniform axis, qubit and angle in [0, 2pi).
std::vector<Gate> build_random_circuit(const ReservoirConfig& cfg);

struct FeatureVector {
    std::vector<double> values;  // (<X_0>, <Z_0>, ..., <X_{n-1}>, <Z_{n-1}>)
};

/// Run the circuit on rho_in, applying the configured noise channel to
/// every qubit a gate touches, immediately after that gate; then read the
/// exact local Pauli expectations.
FeatureVector extract_features(const std::vector<Gate>& circuit,
                               const ReservoirConfig& cfg,
                               const DensityOperator& rho_in);

struct RidgeModel {
    std::vector<double> weights;
    double bias = 0.0;
    double lambda = 0.0;
};

/// L2-regularized least squares on internally centered and scaled columns
/// (population std; bias unregularized). A singular system at lambda = 0
/// is an error, not silently regularized.
RidgeModel ridge_fit(const std::vector<std::vector<double>>& x,
                     const std::vector<double>& y, double lambda);

double ridge_predict(const RidgeModel& model, const std::vector<double>& x);

struct RegressionSample {
    PureState input_state;
    double target;
    double tag;  // scalar parameter R
};

struct RegressionDataset {
    unsigned n_qubits = 0;
    std::vector<RegressionSample> samples;
};

/// Product states with smooth seeded single-qubit angles of a scalar R on
/// a uniform grid, and a smooth seeded nonlinear target.
RegressionDataset synthetic_dataset(unsigned n_qubits, std::size_t n_samples,
                                    std::uint64_t data_seed);

/// Rows "R,target,re_0,im_0,...": interleaved amplitudes, power-of-two
/// count; replaces the synthetic generator without code changes.
RegressionDataset dataset_from_csv(const std::string& text);

struct NoiseCell {
    NoiseKind kind;
    double p;
};

struct MetricsRow {
    NoiseKind kind;
    double p;
    double mse_train;
    double mse_test;
};

/// Fixed seeded 70/30 split, one (fit, evaluate) per grid cell on the same
/// circuit. Rows come back in grid order.
std::vector<MetricsRow> run_experiment(const RegressionDataset& ds,
                                       const ReservoirConfig& base,
                                       const std::vector<NoiseCell>& grid,
                                       double lambda, std::uint64_t split_seed);

}  // namespace dqml
