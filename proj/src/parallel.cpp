#include "wgstokes/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace wgstokes {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void apply_thread_cap_from_env() {
#ifdef _OPENMP
  const char* env = std::getenv("WG_THREADS");
  if (env == nullptr) return;
  try {
    const int cap = std::stoi(env);
    if (cap >= 1) omp_set_num_threads(std::min(cap, omp_get_max_threads()));
  } catch (...) {
    // Ignore unparsable values.
  }
#endif
}

}  // namespace wgstokes
