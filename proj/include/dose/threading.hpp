#pragma once

#include <cstdint>
#include <functional>

namespace dose {

// Process-wide worker cap; defaults to the hardware concurrency and can be
// lowered via the CLI --threads flag or DOSE_THREADS.
void set_thread_cap(int cap);
int thread_cap();

// Runs fn(i) for i in [0, n). Work is statically partitioned; results must
// not depend on which thread runs which index.
void parallel_for(int64_t n, const std::function<void(int64_t)>& fn);

}  // namespace dose
