#pragma once

#include <cstddef>
#include <functional>

namespace runprob {

/// Worker count from RUNPROB_THREADS when set to a positive integer,
/// otherwise std::thread::hardware_concurrency() (at least 1).
unsigned default_worker_count();

/// Calls task(i) for every i in [0, count) across up to `workers` threads.
/// Tasks are claimed dynamically; callers must write results into
/// per-index slots so the outcome does not depend on scheduling.
/// The first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& task);

} // namespace runprob
