#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cytovisc {

/// Environment variable selecting the worker count.
inline constexpr char const* kThreadsEnvVar = "CYTOVISC_THREADS";

/// CYTOVISC_THREADS when set to a positive integer, otherwise the hardware
/// concurrency (at least 1).
std::size_t default_thread_count();

namespace detail {
bool& inside_parallel_region() noexcept;
}

/// Calls fn(i) for i in [0, n). Work is handed out dynamically, so callers
/// must write results into index-addressed slots; aggregation order is then
/// independent of scheduling. Nested calls run serially on the calling
/// worker. The first exception thrown by any fn is rethrown.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t threads = default_thread_count()) {
    threads = std::min(threads, n);
    if (threads <= 1 || detail::inside_parallel_region()) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        detail::inside_parallel_region() = true;
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
            }
        }
        detail::inside_parallel_region() = false;
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace cytovisc
