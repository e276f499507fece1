#pragma once

#include <cstddef>
#include <functional>

namespace netoco {

// Worker count from NETOCO_THREADS, defaulting to hardware concurrency.
int thread_count();

// Runs body(i) for i in [0, n). Results must be written to slot i only, so
// the outcome does not depend on the schedule. If several iterations throw,
// the exception of the lowest index is rethrown. threads <= 0 means
// thread_count().
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, int threads = 0);

}  // namespace netoco
