#pragma once

#include <cstddef>
#include <functional>

namespace anglab {

/// Worker-count cap from ANGULAR_LAB_THREADS (defaults to the hardware).
int worker_count();

/// Runs fn(i) for i in [0, n), split across worker_count() threads in fixed
/// contiguous blocks. Each index is processed by exactly one thread and all
/// per-index reductions stay sequential, so results are byte-identical for
/// any thread count.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace anglab
