#include "qaxiom/backend.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qaxiom {

Backend default_backend() {
#ifdef _OPENMP
  return omp_get_max_threads() > 1 ? Backend::openmp : Backend::serial;
#else
  return Backend::serial;
#endif
}

}  // namespace qaxiom
