#pragma once

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace fognet {

inline int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Sets the OpenMP thread count for the lifetime of the scope.
class ThreadCountScope {
 public:
  explicit ThreadCountScope(int threads) : previous_(max_threads()) {
#if defined(_OPENMP)
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
  }
  ~ThreadCountScope() {
#if defined(_OPENMP)
    omp_set_num_threads(previous_);
#endif
  }
  ThreadCountScope(const ThreadCountScope&) = delete;
  ThreadCountScope& operator=(const ThreadCountScope&) = delete;

 private:
  int previous_;
};

}  // namespace fognet
