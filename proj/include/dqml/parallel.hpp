#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace dqml {

/// Number of workers to use: explicit request, else DQML_THREADS, else
/// hardware concurrency.
unsigned resolve_threads(unsigned requested);

/// Run fn(chunk_index, begin, end) over [0, n_items) split into fixed-size
/// chunks. Chunk boundaries do not depend on the worker count, so callers
/// that write per-chunk slots and reduce them in chunk order get results
/// independent of scheduling.
void parallel_chunks(std::size_t n_items, std::size_t chunk_size,
                     unsigned n_threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace dqml
