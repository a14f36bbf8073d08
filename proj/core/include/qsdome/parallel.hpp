#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace qsdome {

// Worker count used by data-parallel loops; 1 runs inline.
void set_thread_count(size_t n);
size_t thread_count();

// Calls f(i) for i in [0,n). Each index is handled by exactly one worker; callers write to
// preallocated slots so results do not depend on scheduling.
template <class F>
void parallel_for(size_t n, F&& f) {
    size_t t = std::min(thread_count(), n);
    if (t <= 1) {
        for (size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (size_t w = 0; w < t; ++w)
        pool.emplace_back([&, w] {
            for (size_t i = w; i < n; i += t) f(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace qsdome
