#include "qosc/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace qosc::parallel {

namespace {

int read_thread_cap() {
  const char* env = std::getenv("QOSC_THREADS");
  if (env == nullptr || *env == '\0') return omp_get_max_threads();
  try {
    int n = std::stoi(env);
    return n < 1 ? 1 : n;
  } catch (...) {
    return omp_get_max_threads();
  }
}

}  // namespace

int max_threads() {
  // The cap also sizes the OpenMP team; results do not depend on it.
  static const int cap = [] {
    const int n = read_thread_cap();
    omp_set_num_threads(n);
    return n;
  }();
  return cap;
}

Exec default_exec() { return max_threads() > 1 ? Exec::openmp : Exec::serial; }

}  // namespace qosc::parallel
