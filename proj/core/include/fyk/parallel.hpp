#ifndef FYK_PARALLEL_HPP
#define FYK_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace fyk {

/// Thread cap: min(hardware, FYK_THREADS) with FYK_THREADS=1 forcing serial.
inline int thread_cap() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("FYK_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v < static_cast<long>(hw)) hw = static_cast<unsigned>(v);
    }
    return static_cast<int>(hw);
}

/// Runs body(i) for i in [0, count). Each index writes only its own outputs,
/// so results are identical for any thread count.
inline void parallel_for(int count, const std::function<void(int)>& body) {
    const int threads = std::min(count, thread_cap());
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([t, threads, count, &body] {
            for (int i = t; i < count; i += threads) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace fyk

#endif
