#pragma once

#include <cstddef>
#include <functional>

namespace stripes {

/// Worker cap for row-parallel loops. 0 means "use hardware concurrency".
/// Initialized from the STRIPES_THREADS environment variable.
std::size_t thread_cap();
void set_thread_cap(std::size_t cap);

/// Runs fn(begin, end) over contiguous chunks of [0, n), possibly on worker
/// threads. Chunks are disjoint, so row-writers stay deterministic no matter
/// how many threads run.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

/// RAII guard that pins the worker cap (used by the benchmark).
class ThreadCapGuard {
public:
    explicit ThreadCapGuard(std::size_t cap);
    ~ThreadCapGuard();

private:
    std::size_t saved_;
};

} // namespace stripes
