#pragma once

// Index-parallel loop. Every index is computed independently, so results do
// not depend on the thread count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace oseen {

namespace detail {
inline std::atomic<unsigned>& thread_limit() {
    static std::atomic<unsigned> limit{0};  // 0: hardware concurrency
    return limit;
}

inline bool& inside_worker() {
    thread_local bool flag = false;
    return flag;
}
}  // namespace detail

inline void set_max_threads(unsigned n) { detail::thread_limit() = n; }

inline unsigned max_threads() {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned lim = detail::thread_limit();
    return lim == 0 ? hw : std::min(lim, hw);
}

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    // nested loops run serially inside a worker
    const std::size_t workers = detail::inside_worker() ? 1 : std::min<std::size_t>(max_threads(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            detail::inside_worker() = true;
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace oseen
