#pragma once

// Deterministic work splitting for grid computations. Every task writes to
// its own output slots, so results are identical for any thread count.
// THETA_PHASE_THREADS (integer >= 0, 0 = auto) caps the pool size.

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace thetaphase {

inline int thread_count() {
    int cap = 0;  // auto
    if (const char* env = std::getenv("THETA_PHASE_THREADS")) {
        try {
            size_t pos = 0;
            const int v = std::stoi(env, &pos);
            if (pos == std::string(env).size() && v >= 0)
                cap = v;
        } catch (...) {
            // unparsable value: fall back to auto
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    const int autoc = hw == 0 ? 1 : static_cast<int>(hw);
    return cap == 0 ? autoc : cap;
}

template <class Fn>
inline void parallel_for(long n, Fn&& fn) {
    if (n <= 0)
        return;
    const int threads = std::min<long>(thread_count(), n);
    if (threads <= 1) {
        for (long i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        const long lo = n * t / threads;
        const long hi = n * (t + 1) / threads;
        pool.emplace_back([lo, hi, &fn] {
            for (long i = lo; i < hi; ++i)
                fn(i);
        });
    }
    for (std::thread& th : pool)
        th.join();
}

} // namespace thetaphase
