#pragma once

// Doubly-parametric transducer as a Gaussian channel.
//
// Mode a is optical, mode b is microwave. Each side has a cooperativity C,
// a transmissivity tau (coupling efficiency into the travelling mode) and a
// pump that is either red detuned (beamsplitter) or blue detuned (squeezing).

#include <span>
#include <vector>

#include "gausslink/gaussian.hpp"

namespace gausslink {

enum class Pump { Red = -1, Blue = +1 };

inline double sign_of(Pump p) noexcept { return p == Pump::Red ? -1.0 : 1.0; }

/// Strict inequalities (stability, denominators) are enforced with this margin.
inline constexpr double kStabilityMargin = 1e-9;
inline constexpr double kSingularTol = 1e-12;

struct DptParams {
  double ca = 0.0;
  double cb = 0.0;
  double tau_a = 1.0;
  double tau_b = 1.0;
  double n_th = 0.0;
  Pump pump_a = Pump::Red;
  Pump pump_b = Pump::Red;

  /// Throws InvalidArgument on out-of-range fields or two blue pumps.
  void validate() const;
};

/// Linewidths in common rate units. Cooperativities relate to the enhanced
/// couplings through C = 4 G^2 / (kappa gamma_m).
struct PhysicalRates {
  double kappa_a = 100.0;
  double kappa_b = 100.0;
  double gamma_m = 1.0;

  void validate() const;
};

/// Achievable envelope of a device. Transmissivities already include the
/// fixed coupling losses.
struct DeviceCaps {
  double d_a = 0.0;
  double d_b = 0.0;
  double tau_a = 1.0;
  double tau_b = 1.0;
  double n_th = 0.0;
  PhysicalRates rates;

  void validate() const;

  /// Operating point at the given cooperativities (red pumps).
  DptParams at(double ca, double cb, Pump pump_a = Pump::Red,
               Pump pump_b = Pump::Red) const;
};

TwoModeChannel dpt_two_mode_channel(const DptParams& p);

enum class Direction { Up, Down };

/// One-mode conversion channel when both pumps are red. Down maps the optical
/// input to the microwave output, Up the reverse.
OneModeChannel conversion_channel(Direction dir, const DptParams& p);

/// Scalars of the isotropic conversion channel (T = gain I2, N = noise I2)
/// without validation, for inner loops.
struct ChannelScalars {
  double gain;
  double noise;
  /// gain^2/2 + noise - 1/2: excess variance added to vacuum.
  double added;
};
ChannelScalars conversion_scalars(Direction dir, double ca, double cb, double tau_a,
                                  double tau_b, double n_th) noexcept;

/// Largest cooperativity of the blue-pumped side allowed by both stability
/// criteria, minus kStabilityMargin. `c_red` is the cooperativity of the
/// red-pumped side, `kappa_blue` and `kappa_red` the matching linewidths.
double blue_cooperativity_limit(double c_red, double kappa_blue, double kappa_red,
                                double gamma_m) noexcept;

/// True when both pumps are red, or when the blue side satisfies
/// C+ <= blue_cooperativity_limit(C-).
bool stability_ok(const DptParams& p, const PhysicalRates& rates);

/// Returns one DeviceCaps per transducer with the optical transmissivity
/// multiplied by that transducer's share of tau_e. Shares must multiply to
/// tau_e within 1e-12.
std::vector<DeviceCaps> fold_external_loss(const DeviceCaps& caps, double tau_e,
                                           std::span<const double> split);

/// Transmissivity from a loss in dB (loss dB = -10 log10 tau), and back.
double tau_from_db(double loss_db);
double db_from_tau(double tau);

}  // namespace gausslink
