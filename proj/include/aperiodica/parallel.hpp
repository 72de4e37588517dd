#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace aperiodica {

// Worker count: min(APERIODICA_THREADS, hardware) with a floor of 1.
inline unsigned thread_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("APERIODICA_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && unsigned(v) < hw) return unsigned(v);
        if (v >= 1) return unsigned(v);
    }
    return hw;
}

// Index-parallel loop with deterministic output: fn(i) must only write state
// owned by index i.
template <typename F>
void parallel_for(std::size_t count, F&& fn) {
    unsigned workers = thread_count();
    if (workers <= 1 || count < 256) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace aperiodica
