#pragma once

#include <cstddef>
#include <functional>

namespace uqeval {

/// Parallelism cap: UQEVAL_THREADS when set to a positive integer,
/// otherwise the hardware concurrency. Read once per process.
unsigned max_threads();

/// Runs fn over [0, count) split into contiguous chunks, one per worker.
/// Each index is computed independently, so results are identical at any
/// thread count. threads == 0 resolves to max_threads().
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn,
                  unsigned threads = 0);

}  // namespace uqeval
