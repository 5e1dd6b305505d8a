#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nullgeo {

/// Hardware concurrency, capped by the NULLGEO_THREADS environment variable.
int worker_count();

/// Calls f(i) for i in [0, n) on up to worker_count() threads. Each index is
/// visited exactly once; the first exception thrown is rethrown here.
template <class F>
void parallel_for(std::size_t n, F&& f)
{
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            f(i);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex lock;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard guard(lock);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    return;
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace nullgeo
