#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace pdmp::harness {

/// Runs fn(0..n-1) on up to `threads` workers. Results must be written by
/// index; if several calls throw, the exception of the lowest index is rethrown.
template <class Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t width = std::max<std::size_t>(1, std::min(threads, n));
    if (width == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(width);
        for (std::size_t k = 0; k < width; ++k) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace pdmp::harness
