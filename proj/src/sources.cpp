#include "gausslink/sources.hpp"

#include <cmath>
#include <string>

#include "gausslink/error.hpp"

namespace gausslink {

const char* to_string(MoKind kind) noexcept {
  switch (kind) {
    case MoKind::EO: return "EO";
    case MoKind::EM: return "EM";
    case MoKind::IO: return "IO";
    case MoKind::IM: return "IM";
  }
  return "?";
}

std::optional<MoKind> parse_mo_kind(std::string_view name) noexcept {
  for (MoKind k : kAllMoKinds) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

Pump optical_pump(MoKind kind) noexcept {
  return kind == MoKind::IO ? Pump::Blue : Pump::Red;
}

Pump microwave_pump(MoKind kind) noexcept {
  return kind == MoKind::IM ? Pump::Blue : Pump::Red;
}

DptParams source_params(MoKind kind, const DeviceCaps& caps, double ca, double cb) {
  return caps.at(ca, cb, optical_pump(kind), microwave_pump(kind));
}

namespace {

void check_operating_point(MoKind kind, const DptParams& p, const PhysicalRates& rates) {
  p.validate();
  if (p.pump_a != optical_pump(kind) || p.pump_b != microwave_pump(kind)) {
    throw Error(ErrorKind::InvalidOperatingMode,
                std::string("pump configuration does not match source kind ") + to_string(kind));
  }
  if (is_intrinsic(kind) && !stability_ok(p, rates)) {
    throw Error(ErrorKind::Unstable,
                std::string("unstable operating point for source ") + to_string(kind) +
                    " (C_a = " + std::to_string(p.ca) + ", C_b = " + std::to_string(p.cb) + ")");
  }
}

BalancedForm intrinsic_state(bool optical_blue, const DptParams& p) {
  const double ca = p.ca;
  const double cb = p.cb;
  const double ta = p.tau_a;
  const double tb = p.tau_b;
  const double n = p.n_th;
  const double d = optical_blue ? 1.0 - ca + cb : 1.0 + ca - cb;
  const double d2 = d * d;
  // Numerators of a - 1/2 and b - 1/2.
  const double num_a = optical_blue ? 4.0 * ta * ca * (cb + n + 1.0) : 4.0 * ta * ca * (cb + n);
  const double num_b = optical_blue ? 4.0 * tb * cb * (ca + n) : 4.0 * tb * cb * (ca + n + 1.0);
  const double c = 2.0 * (ca + cb + 2.0 * n + 1.0) * std::sqrt(ta * tb * ca * cb) / d2;
  // (a - 1/2)(b - 1/2) - c^2 collapses to a single term for either pump.
  const double margin = -4.0 * ta * tb * ca * cb / d2;
  return BalancedForm::from_excess(num_a / d2, num_b / d2, c, margin);
}

}  // namespace

BalancedForm mo_state(MoKind kind, const DptParams& p, Squeezing r, const PhysicalRates& rates) {
  check_operating_point(kind, p, rates);
  const double ca = p.ca;
  const double cb = p.cb;
  const double ta = p.tau_a;
  const double tb = p.tau_b;
  const double n = p.n_th;
  switch (kind) {
    case MoKind::EO:
    case MoKind::EM: {
      const double sh = std::sinh(2.0 * r.r());
      // cosh 2r - 1 = 2 sinh^2 r, kept apart to avoid cancellation at small r.
      const double sq = std::sinh(r.r()) * std::sinh(r.r());
      const double s = 1.0 + ca + cb;
      const double c = -std::sqrt(ta * tb * ca * cb) * sh / s;
      if (kind == MoKind::EO) {
        const double y = 4.0 * tb * cb * (n + ta * ca * sq) / (s * s);
        const double margin = 4.0 * tb * cb * sq * (n - ta * ca) / (s * s);
        return BalancedForm::from_excess(sq, y, c, margin);
      }
      const double x = 4.0 * ta * ca * (n + tb * cb * sq) / (s * s);
      const double margin = 4.0 * ta * ca * sq * (n - tb * cb) / (s * s);
      return BalancedForm::from_excess(x, sq, c, margin);
    }
    case MoKind::IO:
      return intrinsic_state(true, p);
    case MoKind::IM:
      return intrinsic_state(false, p);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown source kind");
}

BalancedForm mo_state_via_composition(MoKind kind, const DptParams& p, Squeezing r,
                                      const PhysicalRates& rates) {
  check_operating_point(kind, p, rates);
  switch (kind) {
    case MoKind::EO: {
      const CovMat2 v = apply_one_mode(conversion_channel(Direction::Down, p), make_tms(r),
                                       Mode::Second);
      return BalancedForm::from_covariance(v);
    }
    case MoKind::EM: {
      const CovMat2 v = apply_one_mode(conversion_channel(Direction::Up, p), make_tms(r),
                                       Mode::First);
      return BalancedForm::from_covariance(v);
    }
    case MoKind::IO:
    case MoKind::IM: {
      CovMat2 v = apply_two_mode(dpt_two_mode_channel(p), CovMat2::vacuum());
      const OneModeChannel phase_flip{-Mat2::Identity(), Mat2::Zero()};
      v = apply_one_mode(phase_flip, v, Mode::Second);
      return BalancedForm::from_covariance(v);
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown source kind");
}

}  // namespace gausslink
