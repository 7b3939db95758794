#pragma once

#include <cstddef>
#include <functional>

namespace helscat {

// Runs fn(i) for every i in [0, n) across up to `threads` workers
// (threads <= 0 means hardware_concurrency). Scheduling is dynamic, so fn
// must write only to per-index state for results to be thread-count
// independent. The first exception thrown by fn is rethrown on the calling
// thread after all workers have joined.
void parallel_for_index(std::size_t n, int threads,
                        const std::function<void(std::size_t)>& fn);

} // namespace helscat
