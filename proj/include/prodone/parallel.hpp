#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace prodone {

// Worker count shared by every parallel section; 0 means hardware concurrency.
void set_thread_count(std::size_t n);
std::size_t thread_count();

namespace detail {
bool& inside_worker();
}

// Runs fn(i) for i in [0, n). Results must be written to per-index slots so the merge
// order never depends on scheduling. Nested calls run serially on the calling worker.
template <class F>
void parallel_for(std::size_t n, F&& fn) {
    const std::size_t workers = std::min(thread_count(), n);
    if (workers <= 1 || detail::inside_worker()) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    auto work = [&] {
        detail::inside_worker() = true;
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
        detail::inside_worker() = false;
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace prodone
