#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace whpc {

/// Run fn(i) for i in [0, count) across up to `jobs` threads.  Work items are
/// claimed atomically; results must be written to per-index slots so the
/// outcome does not depend on the schedule.  The first exception is rethrown.
template <class Fn>
void parallel_for(std::uint64_t count, int jobs, Fn&& fn) {
    if (count == 0) return;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(count, jobs < 1 ? 1u : std::min<unsigned>(jobs, hw)));
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::uint64_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next.store(count);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace whpc
