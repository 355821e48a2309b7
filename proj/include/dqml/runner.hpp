#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dqml/config.hpp"

namespace dqml {

struct RunOptions {
    std::string output_dir_override;              // --out
    std::optional<std::uint64_t> seed_override;   // --seed
    unsigned n_threads = 0;                       // 0: DQML_THREADS or hardware
};

/// Execute the experiment and write its artifacts (data CSV/JSON files plus
/// manifest.json) under the output directory. All results are computed
/// before anything is written; on a write failure the files already
/// written are removed. Throws Error on failure.
void run(ExperimentConfig cfg, const RunOptions& opts = {});

}  // namespace dqml
