#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace footfall {

inline int default_threads() {
    if (const char* env = std::getenv("FOOTFALL_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Runs fn(i) for i in [0, count). Each index must write only its own
/// output slot; work is striped across threads so results never depend on
/// the thread count.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::size_t n_workers = std::min<std::size_t>(threads, count);
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += n_workers) fn(i);
        });
    }
    for (auto& t : workers) t.join();
}

}  // namespace footfall
