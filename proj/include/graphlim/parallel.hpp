#pragma once

#include <cstdint>
#include <functional>

namespace graphlim {

// Global cap on worker threads (defaults to hardware concurrency).
int max_threads();
void set_max_threads(int n);

// Splits [0, n) into n_ranges contiguous ranges and runs fn(range_index,
// begin, end) on a small pool. Each range is processed exactly once; the
// caller combines per-range results in range order, which keeps reductions
// deterministic for any thread count.
void parallel_ranges(std::uint64_t n, int n_ranges,
                     const std::function<void(int, std::uint64_t, std::uint64_t)>& fn);

}  // namespace graphlim
