#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace stochsym::montecarlo {

int default_threads();

/// Runs fn(i) for i in [0, n) on contiguous chunks; the first exception
/// thrown by any worker is rethrown.
template <class F>
void parallel_for(std::size_t n, int threads, F&& fn) {
    std::size_t k = static_cast<std::size_t>(threads > 0 ? threads : default_threads());
    k = std::max<std::size_t>(1, std::min(k, n));
    if (k == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(k);
    std::vector<std::thread> pool;
    for (std::size_t c = 0; c < k; ++c) {
        pool.emplace_back([&, c] {
            try {
                for (std::size_t i = c * n / k; i < (c + 1) * n / k; ++i) fn(i);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace stochsym::montecarlo
