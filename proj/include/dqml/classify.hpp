#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dqml/lindblad.hpp"

// Binary classification through the two-qubit dissipative steady-state
// channel: records are amplitude-encoded into rho(0), the reservoir's
// infinite-time map produces rho(infinity), and a linear readout on its
// real embedding is thresholded. Fitting is grid search plus one least
// squares solve per candidate; nothing iterates.

namespace dqml {

struct Record {
    std::array<double, 4> features;  // each in [0,1], not all zero
    std::optional<int> label;        // 0/1; empty for unlabeled rows

    void validate() const;
};

struct ReservoirSpec {
    enum class Kind { Thermal, Squeezed };
    Kind kind = Kind::Thermal;
    double n_bar = 0.0;  // thermal
    double r = 0.0;      // squeezed
    double psi = 0.0;    // squeezed
    double gamma = 1.0;

    LindbladModel model() const;
};

struct ClassifierModel {
    ReservoirSpec reservoir;
    std::array<double, 16> weights{};
    double bias = 0.0;
    double threshold = 0.5;
};

/// Pure-state amplitude encoding over the two-qubit computational basis;
/// scale-invariant in the feature vector.
DensityOperator encode_record(const Record& rec);

/// Real embedding of rho(infinity): the 4 diagonal entries, then re/im of
/// the upper triangle in row order.
std::array<double, 16> steady_features(const DensityOperator& rho0,
                                       const SteadyStateMap& map);

/// n_bar in {0, 0.1, ..., 2.0}.
std::vector<ReservoirSpec> default_thermal_grid(double gamma);
/// r in {0, 0.1, ..., 1.0} x psi in {0, pi/2, pi}.
std::vector<ReservoirSpec> default_squeezed_grid(double gamma);

/// Grid search over reservoir candidates; best training accuracy wins,
/// ties going to the earlier (smaller-parameter) candidate.
ClassifierModel fit(const std::vector<Record>& train,
                    const std::vector<ReservoirSpec>& grid);

int predict(const ClassifierModel& model, const Record& rec);

/// Training accuracy of `model` on labeled records (used by fit and tests).
double accuracy(const ClassifierModel& model, const std::vector<Record>& records);

/// Two seeded Gaussian clusters mapped into [0,1]^4, labels alternating.
std::vector<Record> synthetic_records(std::size_t n, std::uint64_t seed);

struct DatasetSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Seeded shuffle split; train_fraction of the records (rounded) train.
DatasetSplit split_dataset(std::size_t n, double train_fraction,
                           std::uint64_t seed);

/// Parse the dataset CSV (header f1,f2,f3,f4,label; empty label allowed).
std::vector<Record> records_from_csv(const std::string& text);

}  // namespace dqml
