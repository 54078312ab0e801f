#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace biphoton {

/// Kernel execution policy. Parallel runs rows across OpenMP threads; Serial is the
/// reference path used by tests and the benchmark. Both produce bit-identical results:
/// every row is computed by exactly one thread in a fixed inner order, and reductions
/// combine per-row partials in row order.
enum class Exec { Serial, Parallel };

namespace detail {

template <class F>
void for_rows_serial(std::ptrdiff_t n, F&& body) {
  for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

template <class F>
void for_rows_parallel(std::ptrdiff_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
#else
  for_rows_serial(n, body);
#endif
}

}  // namespace detail

template <class F>
void for_rows(Exec exec, std::ptrdiff_t n, F&& body) {
  if (exec == Exec::Parallel)
    detail::for_rows_parallel(n, body);
  else
    detail::for_rows_serial(n, body);
}

/// Deterministic sum of per-row partials: row_sum(i) is evaluated once per row
/// (possibly concurrently) and the partials are added in ascending row order.
template <class F>
double sum_rows(Exec exec, std::ptrdiff_t n, F&& row_sum) {
  std::vector<double> partial(static_cast<size_t>(n));
  for_rows(exec, n, [&](std::ptrdiff_t i) { partial[static_cast<size_t>(i)] = row_sum(i); });
  double total = 0.0;
  for (std::ptrdiff_t i = 0; i < n; ++i) total += partial[static_cast<size_t>(i)];
  return total;
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace biphoton
