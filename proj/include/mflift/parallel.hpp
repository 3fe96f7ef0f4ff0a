#ifndef MFLIFT_PARALLEL_HPP
#define MFLIFT_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace mflift {

/// Worker count: `requested` if > 0, else the MFSPEC_THREADS env var, else
/// hardware concurrency (at least 1).
int resolve_threads(int requested);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is
/// processed exactly once; callers must write to disjoint slots so results
/// are independent of scheduling.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

} // namespace mflift

#endif
