#pragma once

// Microwave-microwave states from microwave-optical resources.
//
// A Down topology uses transducer 1 as the source and transducer 2 to
// down-convert the source's optical mode. A swapping topology uses one source
// per arm (transducer i makes arm i) and measures both optical modes jointly.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gausslink/gaussian.hpp"
#include "gausslink/sources.hpp"
#include "gausslink/transducer.hpp"

namespace gausslink {

struct Topology {
  enum class Variant { Down, SwapSym, SwapAsym };

  Variant variant = Variant::Down;
  MoKind first = MoKind::EO;
  MoKind second = MoKind::EO;

  static Topology down(MoKind k) { return {Variant::Down, k, k}; }
  static Topology swap_sym(MoKind k) { return {Variant::SwapSym, k, k}; }
  /// Unordered pair; stored with the lower kind first. Throws if k1 == k2.
  static Topology swap_asym(MoKind k1, MoKind k2);

  bool is_swap() const noexcept { return variant != Variant::Down; }
  bool is_symmetric() const noexcept { return variant != Variant::SwapAsym; }
  bool involves(MoKind k) const noexcept { return first == k || second == k; }

  /// "EO-down", "EO-swap", "EO+IM-swap".
  std::string name() const;
  static std::optional<Topology> parse(std::string_view name);

  /// All 14 topologies: 4 Down, 4 SwapSym, 6 SwapAsym.
  static std::vector<Topology> all();
  /// The 8 Down and SwapSym topologies, in Down/SwapSym pairs per kind.
  static std::vector<Topology> symmetric_all();

  friend bool operator==(const Topology&, const Topology&) = default;
};

/// Where a factor of the external optical transmissivity can sit.
///   Converted: the optical port of an arm's source transducer (folded into
///              that transducer's tau_a);
///   Free:      the undisturbed optical half of an EO source's TMS.
enum class LossSiteKind { Converted, Free };

struct LossSite {
  int arm;  // 0 or 1
  LossSiteKind kind;
};

/// Sites of arm 0 followed by sites of arm 1 (swapping only). EO sources
/// contribute (Converted, Free), every other source (Converted).
std::vector<LossSite> loss_sites(const Topology& t);

/// Split policies used when the caller gives none:
///   Down(EO)          equal shares sqrt(tau_e) on both sites;
///   other Down        tau_e on the single site;
///   SwapSym(EO)       sqrt(tau_e) on each converted site;
///   other SwapSym     tau_e on arm 0, nothing on arm 1;
///   SwapAsym          tau_e on the EO converted site if EO is present,
///                     otherwise on arm 0.
std::vector<double> default_loss_split(const Topology& t, double tau_e);

/// Throws ConstraintViolation unless the split has one factor per site, each
/// factor lies in [tau_e, 1] and the product is tau_e within 1e-12.
void validate_loss_split(const Topology& t, double tau_e, std::span<const double> split);

struct NetworkConfig {
  DeviceCaps caps;
  /// C_a and C_b of transducer 1, then of transducer 2.
  std::array<double, 4> coops{};
  Squeezing r{0.0};
  double tau_e = 1.0;
  /// One factor per loss site; empty selects default_loss_split.
  std::vector<double> loss_split;
};

/// Applies an isotropic down-conversion channel to the optical mode (mode 1).
BalancedForm downconvert_mm(const BalancedForm& mo, const OneModeChannel& conv);

/// Joint measurement of both optical modes (mode 1 of each input). The output
/// keeps the two microwave modes in input order.
BalancedForm swap(const BalancedForm& mo1, const BalancedForm& mo2);

/// A validated loss split resolved per arm: the factor folded into each source
/// transducer's tau_a, and the loss on each free mode. The default is lossless.
struct ArmLoss {
  std::array<double, 2> converted{1.0, 1.0};
  std::array<double, 2> free{1.0, 1.0};
};

ArmLoss resolve_loss_split(const Topology& t, double tau_e,
                           std::span<const double> split);

/// mm_state with the split already resolved; used by inner loops.
BalancedForm mm_state(const Topology& t, const DeviceCaps& caps,
                      const std::array<double, 4>& coops, Squeezing r, const ArmLoss& loss);

/// Throws ConstraintViolation when a cooperativity is outside [0, D] and
/// Unstable when an intrinsic source is past its stability limit.
BalancedForm mm_state(const Topology& t, const NetworkConfig& cfg);

double mm_log_negativity(const Topology& t, const NetworkConfig& cfg);

}  // namespace gausslink
