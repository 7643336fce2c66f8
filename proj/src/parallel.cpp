#include "prodone/parallel.hpp"

namespace prodone {

namespace {
std::atomic<std::size_t> g_threads{0};
}

void set_thread_count(std::size_t n) { g_threads = n; }

std::size_t thread_count() {
    const std::size_t n = g_threads.load();
    if (n) return n;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

bool& detail::inside_worker() {
    thread_local bool flag = false;
    return flag;
}

}  // namespace prodone
