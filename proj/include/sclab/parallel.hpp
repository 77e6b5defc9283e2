#pragma once

#include <cstddef>
#include <functional>

namespace sclab {

// Runs fn(i) for i in [0, count). With threads <= 1 the loop is serial.
// Callers write to disjoint, index-addressed slots, so results do not
// depend on the degree of parallelism.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

// --threads default: SOFTCOVER_THREADS env var, else hardware concurrency.
unsigned default_thread_count();

}  // namespace sclab
