#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace minefair {

// Runs fn(i) for i in [0, count) across up to hardware_concurrency threads.
// Tasks must be independent; results should be written to per-index slots so
// the caller's aggregation order stays deterministic. Falls back to a plain
// loop on single-core hosts.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t workers = std::min<std::size_t>(hw == 0 ? 1 : hw, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

} // namespace minefair
