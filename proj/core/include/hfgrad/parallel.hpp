#pragma once

#include <cstddef>
#include <functional>

namespace hfgrad {

// Worker count: explicit request if nonzero, else HFGRAD_WORKERS, else the
// hardware concurrency.
unsigned worker_count(unsigned requested = 0);

// Runs fn(i) for i in [0, n). Work is handed out dynamically but callers must
// write results to index-owned slots; the first exception is rethrown.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace hfgrad
