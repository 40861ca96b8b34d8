#pragma once

#include <cstddef>
#include <functional>

namespace gpev {

/// Global worker-thread cap for internally parallel operations (default 1).
void set_threads(int n);
int threads();

/// Runs fn(begin, end) on contiguous chunks of [begin, end), one per worker.
/// Chunks must write disjoint outputs; partitioning depends only on the range
/// and the configured thread count.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace gpev
