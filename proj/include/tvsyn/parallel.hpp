#pragma once

#include <functional>

namespace tvsyn {

/// Worker count from TVSYN_THREADS (unset or 0 = hardware concurrency).
int thread_budget();

/// Runs body(i) for i in [0, count). Each index writes only its own slot,
/// so results do not depend on the thread count.
void parallel_for(int count, const std::function<void(int)>& body, int min_parallel = 8);

}  // namespace tvsyn
