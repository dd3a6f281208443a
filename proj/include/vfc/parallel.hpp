#pragma once

#include <cstddef>
#include <functional>

namespace vfc {

// Worker count used by node sweeps. 0 selects the hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Calls fn(i) for i in [0, n). Each index is visited once; callers write to per-index slots
// so results do not depend on the schedule. The first exception thrown is rethrown.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace vfc
