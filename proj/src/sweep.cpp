#include "gausslink/sweep.hpp"

#include <cmath>

#include "gausslink/error.hpp"

namespace gausslink {

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0 && hi >= lo) || points == 0) {
    throw Error(ErrorKind::InvalidArgument, "log grid needs 0 < lo <= hi and at least one point");
  }
  if (points == 1) return {lo};
  std::vector<double> g(points);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < points; ++i) {
    g[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (!(hi >= lo) || points == 0) {
    throw Error(ErrorKind::InvalidArgument, "linear grid needs lo <= hi and at least one point");
  }
  if (points == 1) return {lo};
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  g.back() = hi;
  return g;
}

std::vector<std::vector<ThresholdResult>> threshold_grid(const std::vector<Topology>& topologies,
                                                         const std::vector<DeviceCaps>& caps,
                                                         Squeezing r, Exec exec, int jobs,
                                                         const BoxOptions& box) {
  const std::size_t nt = topologies.size();
  const auto flat = run_map(exec, caps.size() * nt, [&](std::size_t i) {
    return numeric_threshold(topologies[i % nt], caps[i / nt], r, box);
  }, jobs);
  std::vector<std::vector<ThresholdResult>> out(caps.size());
  for (std::size_t i = 0; i < flat.size(); ++i) out[i / nt].push_back(flat[i]);
  return out;
}

std::vector<std::vector<SplitOptimum>> negativity_grid(const std::vector<Topology>& topologies,
                                                       const DeviceCaps& caps,
                                                       const std::vector<double>& tau_e,
                                                       Squeezing r, Exec exec, int jobs,
                                                       const BoxOptions& box) {
  const std::size_t nt = topologies.size();
  const auto flat = run_map(exec, tau_e.size() * nt, [&](std::size_t i) {
    return optimize_loss_split(topologies[i % nt], caps, caps.n_th, r, tau_e[i / nt], box);
  }, jobs);
  std::vector<std::vector<SplitOptimum>> out(tau_e.size());
  for (std::size_t i = 0; i < flat.size(); ++i) out[i / nt].push_back(flat[i]);
  return out;
}

}  // namespace gausslink
