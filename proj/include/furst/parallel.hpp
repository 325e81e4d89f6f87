#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace furst {

// FURSTENBERG_THREADS caps the pool; defaults to hardware concurrency.
inline int thread_budget() {
    int hw = int(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("FURSTENBERG_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < hw) hw = cap;
    }
    return hw;
}

// Runs fn(i) for i in [0, n) across the pool. Each index writes only its own
// slot, so results are identical for any thread count.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    int workers = thread_budget();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) break;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int spawn = workers - 1;
    pool.reserve(std::size_t(spawn));
    for (int w = 0; w < spawn; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

} // namespace furst
