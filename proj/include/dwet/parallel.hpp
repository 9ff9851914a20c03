#pragma once

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dwet {

inline void set_thread_count(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

inline int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Evaluates fn(0..count-1) across OpenMP threads. Slot i always holds fn(i),
/// so any later fixed-order reduction is independent of scheduling.
template <class Fn>
auto map_trials(int count, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, int>> {
  std::vector<std::invoke_result_t<Fn&, int>> out(count > 0 ? count : 0);
  std::vector<std::exception_ptr> errors(out.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < count; ++i) {
    try {
      out[i] = fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Single-threaded reference for map_trials.
template <class Fn>
auto map_trials_serial(int count, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, int>> {
  std::vector<std::invoke_result_t<Fn&, int>> out;
  out.reserve(count > 0 ? count : 0);
  for (int i = 0; i < count; ++i) out.push_back(fn(i));
  return out;
}

}  // namespace dwet
