#include "gausslink/transducer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gausslink/error.hpp"

namespace gausslink {

namespace {

void require(bool ok, ErrorKind kind, const std::string& msg) {
  if (!ok) throw Error(kind, msg);
}

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void DptParams::validate() const {
  require(ca >= 0.0 && std::isfinite(ca), ErrorKind::InvalidArgument,
          "optical cooperativity must be finite and >= 0");
  require(cb >= 0.0 && std::isfinite(cb), ErrorKind::InvalidArgument,
          "microwave cooperativity must be finite and >= 0");
  require(in_unit(tau_a), ErrorKind::InvalidArgument, "tau_a must lie in [0, 1]");
  require(in_unit(tau_b), ErrorKind::InvalidArgument, "tau_b must lie in [0, 1]");
  require(n_th >= 0.0 && std::isfinite(n_th), ErrorKind::InvalidArgument,
          "n_th must be finite and >= 0");
  require(!(pump_a == Pump::Blue && pump_b == Pump::Blue), ErrorKind::InvalidOperatingMode,
          "at least one pump must be red detuned");
}

void PhysicalRates::validate() const {
  require(kappa_a > 0.0 && kappa_b > 0.0 && gamma_m > 0.0, ErrorKind::InvalidArgument,
          "linewidths must be strictly positive");
}

void DeviceCaps::validate() const {
  require(d_a >= 0.0 && std::isfinite(d_a), ErrorKind::InvalidArgument,
          "D_a must be finite and >= 0");
  require(d_b >= 0.0 && std::isfinite(d_b), ErrorKind::InvalidArgument,
          "D_b must be finite and >= 0");
  require(in_unit(tau_a), ErrorKind::InvalidArgument, "tau_a must lie in [0, 1]");
  require(in_unit(tau_b), ErrorKind::InvalidArgument, "tau_b must lie in [0, 1]");
  require(n_th >= 0.0 && std::isfinite(n_th), ErrorKind::InvalidArgument,
          "n_th must be finite and >= 0");
  rates.validate();
}

DptParams DeviceCaps::at(double ca, double cb, Pump pump_a, Pump pump_b) const {
  return DptParams{ca, cb, tau_a, tau_b, n_th, pump_a, pump_b};
}

TwoModeChannel dpt_two_mode_channel(const DptParams& p) {
  p.validate();
  const double sa = sign_of(p.pump_a);
  const double sb = sign_of(p.pump_b);
  const double den = 1.0 - sa * p.ca - sb * p.cb;
  if (std::abs(den) <= kSingularTol) {
    throw Error(ErrorKind::SingularOperatingPoint,
                "transducer denominator 1 - s_a C_a - s_b C_b vanishes");
  }
  const double ta = p.tau_a;
  const double tb = p.tau_b;
  const double n = p.n_th;
  const double k = std::sqrt(ta * tb * p.ca * p.cb);

  Mat4 t = Mat4::Zero();
  t(0, 0) = t(1, 1) = ta * (1.0 - sb * p.cb);
  t(2, 2) = t(3, 3) = tb * (1.0 - sa * p.ca);
  t(0, 2) = k * sa;
  t(1, 3) = k * sb;
  t(2, 0) = k * sb;
  t(3, 1) = k * sa;
  t = (2.0 / den) * t - Mat4::Identity();

  const double alpha =
      ta * ((1.0 - ta) * (1.0 - sb * p.cb) * (1.0 - sb * p.cb) +
            p.ca * (1.0 + 2.0 * n + p.cb * (1.0 - tb)));
  const double beta =
      tb * ((1.0 - tb) * (1.0 - sa * p.ca) * (1.0 - sa * p.ca) +
            p.cb * (1.0 + 2.0 * n + p.ca * (1.0 - ta)));
  const double gamma =
      k * (2.0 * n - sa * sb * (1.0 + sb * ta + sa * tb + p.ca * (1.0 - tb) +
                                p.cb * (1.0 - ta)));

  Mat4 noise = Mat4::Zero();
  noise(0, 0) = noise(1, 1) = alpha;
  noise(2, 2) = noise(3, 3) = beta;
  noise(0, 2) = noise(2, 0) = gamma * sa * sb;
  noise(1, 3) = noise(3, 1) = gamma;
  noise *= 2.0 / (den * den);
  return {t, noise};
}

ChannelScalars conversion_scalars(Direction dir, double ca, double cb, double tau_a,
                                  double tau_b, double n_th) noexcept {
  const double s = 1.0 + ca + cb;
  const double gain = -2.0 * std::sqrt(tau_a * tau_b * ca * cb) / s;
  if (dir == Direction::Down) {
    return {gain, 0.5 + 2.0 * tau_b * cb * (2.0 * n_th - tau_a * ca) / (s * s),
            4.0 * n_th * tau_b * cb / (s * s)};
  }
  return {gain, 0.5 + 2.0 * tau_a * ca * (2.0 * n_th - tau_b * cb) / (s * s),
          4.0 * n_th * tau_a * ca / (s * s)};
}

OneModeChannel conversion_channel(Direction dir, const DptParams& p) {
  p.validate();
  if (p.pump_a != Pump::Red || p.pump_b != Pump::Red) {
    throw Error(ErrorKind::InvalidOperatingMode,
                "one-mode conversion needs both pumps red detuned");
  }
  const auto s = conversion_scalars(dir, p.ca, p.cb, p.tau_a, p.tau_b, p.n_th);
  return OneModeChannel::isotropic(s.gain, s.noise);
}

double blue_cooperativity_limit(double c_red, double kappa_blue, double kappa_red,
                                double gamma_m) noexcept {
  const double first = c_red + 1.0;
  // 4G+^2/(k- + g) < 4G-^2/(k+ + g) + k+ + k-, with 4G^2 = C k g.
  const double rhs = c_red * kappa_red * gamma_m / (kappa_blue + gamma_m) + kappa_blue + kappa_red;
  const double second = rhs * (kappa_red + gamma_m) / (kappa_blue * gamma_m);
  return std::min(first, second) - kStabilityMargin;
}

bool stability_ok(const DptParams& p, const PhysicalRates& rates) {
  rates.validate();
  if (p.pump_a == Pump::Blue && p.pump_b == Pump::Blue) return false;
  if (p.pump_a == Pump::Blue) {
    return p.ca <= blue_cooperativity_limit(p.cb, rates.kappa_a, rates.kappa_b, rates.gamma_m);
  }
  if (p.pump_b == Pump::Blue) {
    return p.cb <= blue_cooperativity_limit(p.ca, rates.kappa_b, rates.kappa_a, rates.gamma_m);
  }
  return true;
}

std::vector<DeviceCaps> fold_external_loss(const DeviceCaps& caps, double tau_e,
                                           std::span<const double> split) {
  require(tau_e > 0.0 && tau_e <= 1.0, ErrorKind::InvalidArgument,
          "external transmissivity must lie in (0, 1]");
  double product = 1.0;
  for (double f : split) {
    require(f >= tau_e - 1e-15 && f <= 1.0, ErrorKind::ConstraintViolation,
            "loss-split factor " + std::to_string(f) + " outside [tau_e, 1]");
    product *= f;
  }
  require(std::abs(product - tau_e) <= 1e-12, ErrorKind::ConstraintViolation,
          "loss-split factors multiply to " + std::to_string(product) +
              ", expected tau_e = " + std::to_string(tau_e));
  std::vector<DeviceCaps> out;
  out.reserve(split.size());
  for (double f : split) {
    DeviceCaps c = caps;
    c.tau_a = caps.tau_a * f;
    out.push_back(c);
  }
  return out;
}

double tau_from_db(double loss_db) {
  require(std::isfinite(loss_db) && loss_db >= 0.0, ErrorKind::InvalidArgument,
          "loss in dB must be finite and >= 0");
  return std::pow(10.0, -loss_db / 10.0);
}

double db_from_tau(double tau) {
  require(tau > 0.0 && tau <= 1.0, ErrorKind::InvalidArgument,
          "transmissivity must lie in (0, 1]");
  return -10.0 * std::log10(tau);
}

}  // namespace gausslink
