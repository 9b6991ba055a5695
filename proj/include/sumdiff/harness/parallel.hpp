#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace sumdiff::harness {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1U, std::thread::hardware_concurrency());
}

struct TaskFailure {
    std::size_t index = 0;
    std::string message;
    std::exception_ptr error;
};

// Runs fn(i) for i in [0, count) on up to `threads` workers. Work items must write only
// to their own slot; nothing here orders side effects. After the first failure no new
// items start. Returns the failure with the smallest index, if any.
template <typename Fn>
std::optional<TaskFailure> parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    threads = std::max(1U, std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex mu;
    std::optional<TaskFailure> failure;

    auto worker = [&] {
        for (;;) {
            if (stop.load(std::memory_order_relaxed)) return;
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (const std::exception& e) {
                std::lock_guard lock(mu);
                if (!failure || i < failure->index) failure = TaskFailure{i, e.what(), std::current_exception()};
                stop = true;
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure || i < failure->index) failure = TaskFailure{i, "unknown error", std::current_exception()};
                stop = true;
            }
        }
    };

    if (threads == 1) {
        worker();
        return failure;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    pool.clear();
    return failure;
}

} // namespace sumdiff::harness
