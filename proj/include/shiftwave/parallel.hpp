#pragma once

#include <cstddef>
#include <functional>

namespace shiftwave {

// Upper bound on worker threads used by the library (>= 1).
void set_max_threads(unsigned n);
unsigned max_threads();
// Reads SHIFTWAVE_THREADS if set and applies it.
void configure_threads_from_env();

// Runs body(i) for i in [0, count). Each index is independent and writes
// its own output slot, so the result does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace shiftwave
