#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace cylpress {

// Runs fn(i) for i in [0, n) across up to n_threads workers, contiguous
// blocks per worker. Callers write results into per-index slots, so the
// outcome is identical for every worker count. fn must not throw.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t n_threads, Fn&& fn) {
    if (n == 0) return;
    if (n_threads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t workers = std::min(n_threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = n / workers;
    std::size_t extra = n % workers;
    std::size_t begin = 0;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t end = begin + chunk + (w < extra ? 1 : 0);
        pool.emplace_back([&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
        begin = end;
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace cylpress
