#pragma once

// Randomized property and oracle checks, replayable from a seed.
//
// Random numbers come from a counter-based generator: the j-th number of draw
// i of property stream s is splitmix64(seed ^ splitmix64(s ^ splitmix64(i * 256 + j))),
// mapped to [0, 1) through its top 53 bits. Draws are therefore independent of
// evaluation order and thread count.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gausslink/thresholds.hpp"

namespace gausslink {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t draw) noexcept
      : seed_(seed), stream_(stream), draw_(draw) {}

  static std::uint64_t value(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t counter) noexcept;

  std::uint64_t next_u64() noexcept;
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept;
  double log_uniform(double lo, double hi) noexcept;
  int index(int n) noexcept;

 private:
  std::uint64_t seed_, stream_, draw_;
  std::uint64_t j_ = 0;
};

struct PropertyReport {
  std::string name;
  bool passed = true;
  long draws = 0;
  /// Largest violation metric seen (meaning depends on the check).
  double worst = 0.0;
  /// Offending draw, when the check failed.
  std::string detail;
};

struct ValidationOptions {
  std::uint64_t seed = 20220;
  int jobs = 0;
  /// Multiplies every draw count (1.0 gives the full suite).
  double scale = 1.0;
};

// Each check draws from its own stream, so reports are reproducible alone.
PropertyReport check_tms_negativity(const ValidationOptions& o, long draws = 1000);
PropertyReport check_composition_associativity(const ValidationOptions& o, long draws = 1000);
PropertyReport check_mo_physicality(const ValidationOptions& o, long draws = 10000);
PropertyReport check_dpt_physicality(const ValidationOptions& o, long draws = 10000);
PropertyReport check_mo_oracle(const ValidationOptions& o, long draws = 10000);
PropertyReport check_conversion_trace(const ValidationOptions& o, long draws = 10000);
PropertyReport check_swap_theorem(const ValidationOptions& o, long draws = 100000);
/// Same check against another swap implementation (used for mutation tests).
using SwapFn = std::function<BalancedForm(const BalancedForm&, const BalancedForm&)>;
PropertyReport check_swap_theorem(const ValidationOptions& o, long draws, const SwapFn& swap_fn);
PropertyReport check_global_necessary(const ValidationOptions& o, long draws = 10000);
PropertyReport check_down_eo_equal_split(const ValidationOptions& o, long draws = 50);
PropertyReport check_swap_sym_extremal_split(const ValidationOptions& o, long draws = 50);
PropertyReport check_threshold_agreement(const ValidationOptions& o, long draws = 200);
PropertyReport check_table_bound(const ValidationOptions& o, long draws = 10000);

/// Runs every check above with counts multiplied by o.scale.
std::vector<PropertyReport> run_validation(const ValidationOptions& o);

}  // namespace gausslink
