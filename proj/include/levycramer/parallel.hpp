#pragma once

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "levycramer/rng.hpp"

namespace levycramer {

// Worker cap for replicate loops: LEVY_CRAMER_THREADS if set, otherwise the
// hardware concurrency (at most 16).
inline unsigned thread_budget() {
    if (const char* env = std::getenv("LEVY_CRAMER_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : (hw > 16u ? 16u : hw);
}

// Runs fn(i, rng_i) for i in [0, n) where rng_i is the i-th substream of
// `seed`.  Replicates may be spread over threads; every replicate owns its
// substream and writes only to its own index, so results are bit-identical
// for any thread count.  Reductions belong after this call, in index order.
template <typename Fn>
void sample_replicates(std::size_t n, Fn&& fn, std::uint64_t seed) {
    const unsigned want = thread_budget();
    const std::size_t min_chunk = 256;
    unsigned workers = want;
    if (n < 2 * min_chunk || workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            Rng rng(seed, i);
            fn(i, rng);
        }
        return;
    }
    if (workers > n / min_chunk) workers = static_cast<unsigned>(n / min_chunk);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex err_mu;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::size_t lo = n * w / workers;
            const std::size_t hi = n * (w + 1) / workers;
            try {
                for (std::size_t i = lo; i < hi; ++i) {
                    Rng rng(seed, i);
                    fn(i, rng);
                }
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace levycramer
