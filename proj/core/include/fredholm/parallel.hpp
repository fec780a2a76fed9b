#pragma once

#include <cstddef>

#ifdef FREDHOLM_HAVE_OPENMP
#include <omp.h>
#endif

namespace fredholm {

/// Number of workers used when a caller passes threads <= 0.
inline int default_threads() {
#ifdef FREDHOLM_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Runs body(i) for i in [0, n) with a static partition over `threads` workers.
/// Each index must write only its own outputs and must not throw.
template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
#ifdef FREDHOLM_HAVE_OPENMP
  const int workers = threads > 0 ? threads : default_threads();
  if (workers > 1 && n > 1) {
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)threads;
#endif
  for (std::size_t i = 0; i < n; ++i) {
    body(i);
  }
}

}  // namespace fredholm
