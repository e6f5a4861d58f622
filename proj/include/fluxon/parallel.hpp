#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace fluxon {

// Concurrency cap: FLUXON_THREADS when set and positive, otherwise a modest
// automatic default (dense eigenproblems are memory-hungry).
inline unsigned max_threads() {
    if (const char* env = std::getenv("FLUXON_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return std::min(hw == 0 ? 1u : hw, 4u);
}

// Runs fn(0..n-1) on up to max_threads() workers. Results must be written to
// per-index slots by the caller, so output order never depends on scheduling.
inline void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = std::min<std::size_t>(max_threads(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace fluxon
