#pragma once

#include <cstddef>
#include <functional>

namespace mpsd {

// Worker count: MPSD_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

// Runs body(i) for i in [0, count). Each index must write only its own output slot,
// so results do not depend on the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace mpsd
