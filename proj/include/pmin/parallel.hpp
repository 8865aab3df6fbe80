#pragma once

#include <cstddef>
#include <functional>

namespace pmin {

/// Number of worker threads: hardware concurrency capped by the PMIN_THREADS
/// environment variable (values < 1 mean single-threaded).
unsigned worker_threads();

/// Runs fn(i) for i in [0, n) on contiguous chunks across worker threads.
/// Callers must write results by index (or reduce with order-independent
/// operations) so output does not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace pmin
