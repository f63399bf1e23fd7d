#pragma once

// Entanglement thresholds on n_th and optimization over cooperativities and
// external-loss splits.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "gausslink/network.hpp"
#include "gausslink/optimize.hpp"

namespace gausslink {

enum class ThresholdMethod { Analytic, Bisection };

struct ThresholdResult {
  /// Entangled iff n_th < n_th_max. Never negative.
  double n_th_max = 0.0;
  /// Unclipped closed-form value (may be negative); equals n_th_max for
  /// bisection results.
  double raw = 0.0;
  ThresholdMethod method = ThresholdMethod::Analytic;
  /// C_a1, C_b1, C_a2, C_b2 at which the threshold is attained.
  std::array<double, 4> argmax{};
  /// The topology is separable at every n_th >= 0 for these caps.
  bool cannot_entangle = false;
  int iterations = 0;
};

/// Largest optical cooperativity of an IO source (optical pump blue) that is
/// stable at microwave cooperativity `cb` and within D_a. Bisection on the
/// stability predicate to 1e-10.
double max_stable_ca(const DeviceCaps& caps, double cb);

/// Same for the microwave side of an IM source at optical cooperativity `ca`.
double max_stable_cb(const DeviceCaps& caps, double ca);

/// Closed-form thresholds of the 8 symmetric topologies. EM rows need the
/// source cooperativities (C_a, C_b) in `em_coops`; the down-converter then
/// runs at C_a = D_a. Throws Unsupported for asymmetric swapping.
ThresholdResult analytic_threshold(const Topology& t, const DeviceCaps& caps, Squeezing r,
                                   std::optional<std::array<double, 2>> em_coops = std::nullopt);

/// EM rows with the source at C_a = D_a and only C_b optimized.
ThresholdResult em_threshold_cb_only(const Topology& t, const DeviceCaps& caps, Squeezing r);

/// Maps the unit box onto the feasible cooperativities of a topology.
/// Symmetric swapping uses one transducer's pair for both arms.
class CoopSpace {
 public:
  CoopSpace(const Topology& t, const DeviceCaps& caps);

  int dim() const noexcept { return dim_; }
  std::array<double, 4> map(std::span<const double> u) const;

 private:
  std::array<double, 2> source(MoKind kind, double u0, double u1) const;

  Topology topology_;
  DeviceCaps caps_;
  int dim_;
};

struct CoopOptimum {
  std::array<double, 4> coops{};
  double nu = 0.5;
  /// nu - 1/2 without rounding to 1/2; negative iff entangled.
  double nu_offset = 0.0;
  double e = 0.0;
  long evaluations = 0;
};

struct OptimizeSettings {
  double tau_e = 1.0;
  /// Empty selects default_loss_split.
  std::vector<double> loss_split;
  std::vector<std::array<double, 4>> warm_starts;
  /// Also start from the cooperativities that maximize coop_threshold. The
  /// entangled region can be a thin sliver of the box (EM sources entangle
  /// only near impedance matching C_a = 1 + C_b); that point lies inside it
  /// whenever the region is non-empty.
  bool threshold_seed = true;
  BoxOptions box;
};

/// Largest n_th at which the state at fixed cooperativities is entangled, or
/// 0 if it is separable at n_th = 0. Root of the separability margin in n_th
/// to relative width 1e-13, reported on the entangled side.
double coop_threshold(const Topology& t, const DeviceCaps& caps, const std::array<double, 4>& coops,
                      Squeezing r, const ArmLoss& loss = {});

struct CoopThreshold {
  std::array<double, 4> coops{};
  double n_th_max = 0.0;
  long evaluations = 0;
};

/// Maximizes coop_threshold over the feasible cooperativities.
CoopThreshold max_coop_threshold(const Topology& t, const DeviceCaps& caps, Squeezing r,
                                 const ArmLoss& loss = {}, const BoxOptions& box = {});

/// Maximizes the log-negativity (minimizes nu) over feasible cooperativities
/// at thermal occupancy n_th. Ties resolve to the lexicographically smallest
/// cooperativity vector.
CoopOptimum optimize_cooperativities(const Topology& t, const DeviceCaps& caps, double n_th,
                                     Squeezing r, const OptimizeSettings& settings = {});

/// Largest n_th at which the optimized state is entangled, by bisection on
/// [0, tau_a D_a] to relative width 1e-12. Every step re-optimizes the
/// cooperativities, warm-started from the previous entangled optimum and
/// from max_coop_threshold.
ThresholdResult numeric_threshold(const Topology& t, const DeviceCaps& caps, Squeezing r,
                                  const BoxOptions& box = {});

struct SplitOptimum {
  std::vector<double> split;
  std::array<double, 4> coops{};
  double nu = 0.5;
  /// nu - 1/2 without rounding to 1/2; negative iff entangled.
  double nu_offset = 0.0;
  double e = 0.0;
};

/// Best external-loss split. Down(EO) takes equal shares, other Down
/// topologies have one site, SwapSym of non-EO kinds puts all loss on one arm.
/// SwapSym(EO) and SwapAsym compare every vertex (all loss on one site) and
/// every equal two-site split, re-optimizing cooperativities for each.
SplitOptimum optimize_loss_split(const Topology& t, const DeviceCaps& caps, double n_th,
                                 Squeezing r, double tau_e, const BoxOptions& box = {});

/// Candidate splits examined by optimize_loss_split.
std::vector<std::vector<double>> candidate_loss_splits(const Topology& t, double tau_e);

}  // namespace gausslink
