#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace quench::cli {

/// Run f(0..n-1) on a bounded worker pool. Task order of completion is
/// irrelevant: callers write results into index-addressed slots, so output
/// is deterministic for any worker count. The first exception is rethrown
/// after all workers join.
inline void parallel_for(std::size_t n, int workers,
                         const std::function<void(std::size_t)>& f) {
    const int w = std::max(1, std::min<int>(workers, static_cast<int>(n)));
    if (w == 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(w));
    for (int t = 0; t < w; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace quench::cli
