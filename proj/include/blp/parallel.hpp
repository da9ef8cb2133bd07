#ifndef BLP_PARALLEL_HPP
#define BLP_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace blp {

/// Worker cap from BLP_THREADS, else the hardware concurrency (at least 1).
int worker_count();

/// Calls body(i) for i in [0, count) on up to `workers` threads (0 = worker_count()).
///
/// Indices are handed out dynamically; callers write results by index, so the
/// outcome never depends on the schedule. The first exception thrown is rethrown.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

}  // namespace blp

#endif  // BLP_PARALLEL_HPP
