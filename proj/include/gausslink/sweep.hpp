#pragma once

// Data-parallel evaluation over independent grid points. Every kernel has a
// serial reference with identical results; results are always returned in
// index order.

#include <cstddef>
#include <exception>
#include <omp.h>
#include <type_traits>
#include <vector>

#include "gausslink/thresholds.hpp"

namespace gausslink {

enum class Exec { Serial, Parallel };

template <class F>
auto serial_map(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  std::vector<std::invoke_result_t<F&, std::size_t>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

/// OpenMP map with dynamic scheduling. The first exception thrown by any
/// point is rethrown after the loop. jobs <= 0 uses the OpenMP default.
template <class F>
auto parallel_map(std::size_t n, F&& f, int jobs)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out(n);
  std::exception_ptr error;
  const long count = static_cast<long>(n);
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(gausslink_parallel_map_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

template <class F>
auto run_map(Exec exec, std::size_t n, F&& f, int jobs)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  if (exec == Exec::Serial) return serial_map(n, f);
  return parallel_map(n, f, jobs);
}

std::vector<double> log_grid(double lo, double hi, std::size_t points);
std::vector<double> linear_grid(double lo, double hi, std::size_t points);

/// Numeric thresholds for every (caps, topology) pair, row-major in caps.
std::vector<std::vector<ThresholdResult>> threshold_grid(const std::vector<Topology>& topologies,
                                                         const std::vector<DeviceCaps>& caps,
                                                         Squeezing r, Exec exec, int jobs,
                                                         const BoxOptions& box = {});

/// Optimized log-negativity for every (tau_e, topology) pair with the best
/// loss split per topology, row-major in tau_e.
std::vector<std::vector<SplitOptimum>> negativity_grid(const std::vector<Topology>& topologies,
                                                       const DeviceCaps& caps,
                                                       const std::vector<double>& tau_e,
                                                       Squeezing r, Exec exec, int jobs,
                                                       const BoxOptions& box = {});

}  // namespace gausslink
