#include "rnda/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rnda {

int worker_count() {
  if (const char* env = std::getenv("RNDA_THREADS")) {
    try {
      int n = std::stoi(env);
      return n < 1 ? 1 : n;
    } catch (const std::exception&) {
      // fall through to the OpenMP default
    }
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace rnda
