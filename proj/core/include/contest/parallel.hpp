#pragma once

#include <cstddef>
#include <functional>

namespace contest {

// Worker count: CONTEST_OPT_THREADS if set and positive, else hardware concurrency.
std::size_t configured_threads();

// Splits [0, count) into contiguous blocks, one per worker, and calls
// body(begin, end, worker) on each. Blocks depend only on count and threads.
void parallel_blocks(std::size_t count, std::size_t threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace contest
