#include "dqml/parallel.hpp"

#include <cstdlib>
#include <exception>

namespace dqml {

unsigned resolve_threads(unsigned requested) {
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("DQML_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0)
            return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void parallel_chunks(std::size_t n_items, std::size_t chunk_size,
                     unsigned n_threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n_items == 0)
        return;
    const std::size_t n_chunks = (n_items + chunk_size - 1) / chunk_size;
    n_threads = resolve_threads(n_threads);
    if (n_threads <= 1 || n_chunks <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c)
            fn(c, c * chunk_size, std::min(n_items, (c + 1) * chunk_size));
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        while (true) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks || failed.load())
                return;
            try {
                fn(c, c * chunk_size, std::min(n_items, (c + 1) * chunk_size));
            } catch (...) {
                if (!failed.exchange(true))
                    error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned spawn = static_cast<unsigned>(
        std::min<std::size_t>(n_threads, n_chunks));
    pool.reserve(spawn);
    for (unsigned i = 0; i < spawn; ++i)
        pool.emplace_back(worker);
    for (std::thread& t : pool)
        t.join();
    if (failed.load() && error)
        std::rethrow_exception(error);
}

}  // namespace dqml
