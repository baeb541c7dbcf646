#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace adhoc {

/// Worker count: ADHOCNET_WORKERS overrides hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("ADHOCNET_WORKERS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run fn(0..jobs-1) over a worker pool. Callers keep determinism by writing
/// results into per-index slots and reducing sequentially afterwards.
inline void parallel_for(int jobs, const std::function<void(int)>& fn) {
    const int workers = std::min(worker_count(), jobs);
    if (workers <= 1) {
        for (int j = 0; j < jobs; ++j) fn(j);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int j = next.fetch_add(1);
                if (j >= jobs) return;
                fn(j);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace adhoc
