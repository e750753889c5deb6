#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace ncc {

// Runs fn(first, last) over contiguous blocks of [0, count). Blocks are fixed
// by `workers`, not by thread scheduling, so any reduction that combines block
// results in block order is independent of execution timing.
template <class Fn>
void parallel_blocks(std::size_t count, unsigned workers, Fn&& fn) {
    if (count == 0) return;
    std::size_t nthreads = workers == 0 ? 1 : workers;
    if (nthreads > count) nthreads = count;
    if (nthreads == 1) {
        fn(std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    std::size_t chunk = count / nthreads;
    std::size_t extra = count % nthreads;
    std::size_t begin = 0;
    for (std::size_t t = 0; t < nthreads; ++t) {
        std::size_t len = chunk + (t < extra ? 1 : 0);
        std::size_t end = begin + len;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
        begin = end;
    }
    for (auto& th : pool) th.join();
}

// Runs body(i) for each i in [0, count), spread over `workers` threads.
// Each index must write only to its own output slot; with seeds derived per
// index the result is identical for any worker count.
template <class Fn>
void parallel_for_index(std::size_t count, unsigned workers, Fn&& body) {
    parallel_blocks(count, workers, [&body](std::size_t first, std::size_t last) {
        for (std::size_t i = first; i < last; ++i) body(i);
    });
}

}  // namespace ncc
