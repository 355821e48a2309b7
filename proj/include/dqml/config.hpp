#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dqml/classify.hpp"
#include "dqml/qrc.hpp"
#include "dqml/qrl.hpp"

// Experiment configuration: a single JSON document, exhaustively validated
// (unknown keys rejected, every violation reported, defaults filled in).

namespace dqml {

/// Carries every validation problem found in one pass.
class ConfigError : public Error {
  public:
    explicit ConfigError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const { return errors_; }

  private:
    std::vector<std::string> errors_;
};

struct QrlSweepSpec {
    QrlParams base;  // tau/gamma0/T overridden per grid point
    std::vector<double> tau_grid;
    std::vector<SweepConfig> configs;
    double basis_polar = 1.0;
    double basis_azimuth = 0.5;
};

struct QrlIterationsSpec {
    QrlParams base;  // gamma0 overridden per run
    std::vector<double> gamma0_values;
    double basis_polar = 1.0;
    double basis_azimuth = 0.5;
};

struct LindbladSteadySpec {
    ReservoirSpec reservoir;
    std::vector<std::string> initial_states;  // preset names
};

struct ClassifySpec {
    ReservoirSpec::Kind reservoir_kind = ReservoirSpec::Kind::Thermal;
    double gamma = 1.0;
    std::size_t n_records = 40;
    double train_fraction = 0.7;
    std::uint64_t data_seed = 0;   // 0 = derive from master seed
    std::uint64_t split_seed = 0;  // 0 = derive from master seed
    std::string dataset_csv;       // optional path; replaces the generator
};

struct QrcSpec {
    ReservoirConfig reservoir;  // noise fields come from the grid
    std::vector<NoiseCell> grid;
    double lambda = 1e-6;
    std::size_t n_samples = 60;
    std::uint64_t data_seed = 0;
    std::uint64_t split_seed = 0;
    std::string dataset_csv;  // optional path
};

struct ExperimentConfig {
    std::string experiment;
    std::string output_dir;
    std::uint64_t master_seed = 12345;
    std::variant<QrlSweepSpec, QrlIterationsSpec, LindbladSteadySpec,
                 ClassifySpec, QrcSpec>
        params;
};

/// Parse and validate; throws ConfigError listing every problem.
ExperimentConfig parse_config(const std::string& json_text);

/// Canonical JSON of a resolved config; parse_config(dump) round-trips.
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace dqml
