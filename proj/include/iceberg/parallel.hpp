#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace iceberg {

/// Worker cap: ICEBERG_THREADS when set (>= 1), otherwise the hardware
/// concurrency clamped to 8.
inline unsigned thread_cap() {
    if (const char* env = std::getenv("ICEBERG_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : std::min(hw, 8u);
}

/// Runs fn(i) for i in [0, count). Results must be written to pre-allocated
/// per-index slots so the outcome does not depend on the thread count.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const unsigned cap = thread_cap();
    if (cap <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(cap, count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < count; i += workers) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace iceberg
