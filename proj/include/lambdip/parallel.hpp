#pragma once

// Minimal deterministic parallel-for: the index range is split into one
// contiguous block per worker, workers write disjoint slots, and any
// reduction is done by the caller in index order afterwards.  Results are
// therefore bit-identical for every thread count.  LAMBDIP_THREADS caps the
// worker count (default: hardware concurrency).

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace lambdip {

inline unsigned worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) {
        n = 1;
    }
    if (const char* env = std::getenv("LAMBDIP_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) {
            n = static_cast<unsigned>(std::min(parsed, 256L));
        }
    }
    return n;
}

// Runs fn(begin, end) over disjoint blocks covering [0, n).  Exceptions from
// workers are captured and the first one (lowest block index) is rethrown.
inline void parallel_for_blocks(std::size_t n,
                                const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) {
        return;
    }
    const std::size_t workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        fn(0, n);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) {
            break;
        }
        pool.emplace_back([&, w, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }
}

} // namespace lambdip
