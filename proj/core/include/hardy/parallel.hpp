#pragma once

#include <cstddef>
#include <functional>

namespace hardy {

/// Worker count used when a call passes threads <= 0. Starts at 1.
int default_threads();
void set_default_threads(int threads);

/// Runs body(begin, end) over a static partition of [0, count). Chunks are
/// fixed by (count, threads) alone, so callers writing per-index results get
/// identical output for any thread count. The first exception thrown by a
/// chunk is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body,
                  int threads = 0);

}  // namespace hardy
