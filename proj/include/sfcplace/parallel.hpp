// Deterministic parallel map: work items are index-addressed and seeded
// independently, so results do not depend on the worker count.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace sfcplace {

inline int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SFC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    threads = std::min(std::max(1, threads), std::max(1, count));
    if (threads == 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        const int begin = static_cast<int>(static_cast<long long>(count) * w / threads);
        const int end = static_cast<int>(static_cast<long long>(count) * (w + 1) / threads);
        pool.emplace_back([begin, end, &fn] {
            for (int i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace sfcplace
