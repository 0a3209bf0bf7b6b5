#pragma once

#include <cstddef>
#include <functional>

namespace spindirac {

// Worker count: hardware concurrency, capped by SPINDIRAC_THREADS when set.
unsigned thread_count();

// Runs body(i) for i in [0, n). Results must be written to per-index slots so the
// outcome does not depend on the number of workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace spindirac
