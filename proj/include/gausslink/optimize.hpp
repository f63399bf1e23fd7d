#pragma once

// Derivative-free minimization on the unit box [0, 1]^d.

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace gausslink {

using BoxObjective = std::function<double(std::span<const double>)>;

/// Maps a point to the vector used for tie-breaking; among points whose
/// values agree to relative `tie_tol` the lexicographically smallest key wins.
using TieKey = std::function<std::vector<double>(std::span<const double>)>;

struct BoxOptions {
  int quasi_random_starts = 16;
  /// Also evaluate every corner of the box and start a simplex from the best.
  bool corners = true;
  double tol = 1e-10;
  int max_evals_per_start = 300;
  double initial_step = 0.25;
  /// Stop as soon as any evaluation falls strictly below this value.
  std::optional<double> stop_below;
  /// Additional starting points (for example a previous optimum).
  std::vector<std::vector<double>> extra_starts;
  TieKey tie_key;
  double tie_tol = 1e-13;
};

struct BoxResult {
  std::vector<double> x;
  double value = 0.0;
  long evaluations = 0;
  bool stopped_early = false;
};

/// i-th point (0-based, skipping the origin) of the Halton sequence in `dim`
/// dimensions, using the first `dim` primes as bases. dim <= 8.
std::vector<double> halton_point(int index, int dim);

/// Multi-start Nelder-Mead on f(clamp(x)) followed by one coordinate-wise
/// golden-section pass on the best point. The returned x is inside the box.
BoxResult minimize_box(const BoxObjective& f, int dim, const BoxOptions& opts = {});

/// Golden-section search for a minimum of a unimodal f on [lo, hi]. Endpoints
/// are compared too, so monotone functions return the better end.
double golden_section_argmin(const std::function<double(double)>& f, double lo, double hi,
                             double tol = 1e-12);

}  // namespace gausslink
