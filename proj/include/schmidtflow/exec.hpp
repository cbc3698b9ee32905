#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace schmidtflow {

/// Execution mode for the data-parallel per-step kernels. Both modes compute
/// bit-identical results: parallel loops only ever write disjoint slots and
/// reductions stay serial.
enum class ExecMode { Serial, Parallel };

struct Exec {
  ExecMode mode = ExecMode::Parallel;
  int workers = 0;  // 0 = library default

  static Exec serial() { return {ExecMode::Serial, 0}; }
  static Exec parallel(int workers = 0) { return {ExecMode::Parallel, workers}; }
};

template <typename Fn>
void for_each_index(std::size_t n, const Exec& exec, Fn&& fn) {
  if (exec.mode == ExecMode::Serial) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
#ifdef _OPENMP
  const long long nn = static_cast<long long>(n);
  if (exec.workers > 0) {
#pragma omp parallel for schedule(static) num_threads(exec.workers)
    for (long long i = 0; i < nn; ++i) fn(static_cast<std::size_t>(i));
  } else {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < nn; ++i) fn(static_cast<std::size_t>(i));
  }
#else
  for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

}  // namespace schmidtflow
