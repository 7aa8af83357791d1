// Element-parallel execution policy. Every parallel kernel has a serial
// reference path selected by ParallelPolicy; results are identical because
// per-element work writes to preassigned slots.

#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wgstokes {

enum class ParallelPolicy { serial, openmp };

/// Worker threads currently available (1 when built without OpenMP).
int max_threads();

/// Applies the WG_THREADS environment cap, if set to a positive integer.
void apply_thread_cap_from_env();

template <typename F>
void parallel_for(std::int64_t n, ParallelPolicy policy, F&& body) {
#ifdef _OPENMP
  if (policy == ParallelPolicy::openmp) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#else
  (void)policy;
#endif
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

}  // namespace wgstokes
