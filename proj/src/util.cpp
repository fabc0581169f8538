#include "stripes/util.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace stripes {

namespace {

std::size_t cap_from_env() {
    const char* env = std::getenv("STRIPES_THREADS");
    if (env == nullptr) return 0;
    char* end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end == env || value < 0) return 0;
    return static_cast<std::size_t>(value);
}

std::atomic<std::size_t>& cap_storage() {
    static std::atomic<std::size_t> cap{cap_from_env()};
    return cap;
}

} // namespace

std::size_t thread_cap() { return cap_storage().load(std::memory_order_relaxed); }

void set_thread_cap(std::size_t cap) { cap_storage().store(cap, std::memory_order_relaxed); }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    std::size_t workers = thread_cap();
    if (workers == 0) workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (workers > n) workers = n;
    if (workers == 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = begin + chunk < n ? begin + chunk : n;
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : pool) t.join();
}

ThreadCapGuard::ThreadCapGuard(std::size_t cap) : saved_(thread_cap()) { set_thread_cap(cap); }

ThreadCapGuard::~ThreadCapGuard() { set_thread_cap(saved_); }

} // namespace stripes
