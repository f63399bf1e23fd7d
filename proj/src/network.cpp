#include "gausslink/network.hpp"

#include <cmath>
#include <string>

#include "gausslink/error.hpp"

namespace gausslink {

Topology Topology::swap_asym(MoKind k1, MoKind k2) {
  if (k1 == k2) {
    throw Error(ErrorKind::InvalidArgument, "asymmetric swapping needs two different kinds");
  }
  if (static_cast<int>(k2) < static_cast<int>(k1)) std::swap(k1, k2);
  return {Variant::SwapAsym, k1, k2};
}

std::string Topology::name() const {
  switch (variant) {
    case Variant::Down: return std::string(to_string(first)) + "-down";
    case Variant::SwapSym: return std::string(to_string(first)) + "-swap";
    case Variant::SwapAsym:
      return std::string(to_string(first)) + "+" + to_string(second) + "-swap";
  }
  return "?";
}

std::optional<Topology> Topology::parse(std::string_view name) {
  const auto dash = name.rfind('-');
  if (dash == std::string_view::npos) return std::nullopt;
  const auto head = name.substr(0, dash);
  const auto tail = name.substr(dash + 1);
  const auto plus = head.find('+');
  if (plus == std::string_view::npos) {
    const auto k = parse_mo_kind(head);
    if (!k) return std::nullopt;
    if (tail == "down") return down(*k);
    if (tail == "swap") return swap_sym(*k);
    return std::nullopt;
  }
  if (tail != "swap") return std::nullopt;
  const auto k1 = parse_mo_kind(head.substr(0, plus));
  const auto k2 = parse_mo_kind(head.substr(plus + 1));
  if (!k1 || !k2 || *k1 == *k2) return std::nullopt;
  return swap_asym(*k1, *k2);
}

std::vector<Topology> Topology::all() {
  std::vector<Topology> out;
  for (MoKind k : kAllMoKinds) out.push_back(down(k));
  for (MoKind k : kAllMoKinds) out.push_back(swap_sym(k));
  for (std::size_t i = 0; i < kAllMoKinds.size(); ++i) {
    for (std::size_t j = i + 1; j < kAllMoKinds.size(); ++j) {
      out.push_back(swap_asym(kAllMoKinds[i], kAllMoKinds[j]));
    }
  }
  return out;
}

std::vector<Topology> Topology::symmetric_all() {
  std::vector<Topology> out;
  for (MoKind k : kAllMoKinds) {
    out.push_back(down(k));
    out.push_back(swap_sym(k));
  }
  return out;
}

namespace {

void append_sites(std::vector<LossSite>& out, int arm, MoKind kind) {
  out.push_back({arm, LossSiteKind::Converted});
  if (kind == MoKind::EO) out.push_back({arm, LossSiteKind::Free});
}

}  // namespace

std::vector<LossSite> loss_sites(const Topology& t) {
  std::vector<LossSite> out;
  append_sites(out, 0, t.first);
  if (t.is_swap()) append_sites(out, 1, t.second);
  return out;
}

std::vector<double> default_loss_split(const Topology& t, double tau_e) {
  const auto sites = loss_sites(t);
  std::vector<double> split(sites.size(), 1.0);
  if (t.variant == Topology::Variant::Down) {
    if (t.first == MoKind::EO) {
      split[0] = split[1] = std::sqrt(tau_e);
    } else {
      split[0] = tau_e;
    }
    return split;
  }
  if (t.variant == Topology::Variant::SwapSym) {
    if (t.first == MoKind::EO) {
      split[0] = split[2] = std::sqrt(tau_e);
    } else {
      split[0] = tau_e;
    }
    return split;
  }
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const MoKind kind = sites[i].arm == 0 ? t.first : t.second;
    if (kind == MoKind::EO && sites[i].kind == LossSiteKind::Converted) {
      split[i] = tau_e;
      return split;
    }
  }
  split[0] = tau_e;
  return split;
}

void validate_loss_split(const Topology& t, double tau_e, std::span<const double> split) {
  if (!(tau_e > 0.0 && tau_e <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "external transmissivity must lie in (0, 1]");
  }
  const std::size_t expected = loss_sites(t).size();
  if (split.size() != expected) {
    throw Error(ErrorKind::ConstraintViolation,
                t.name() + " has " + std::to_string(expected) + " loss sites, split has " +
                    std::to_string(split.size()));
  }
  double product = 1.0;
  for (double f : split) {
    if (!(f >= tau_e * (1.0 - 1e-12) && f <= 1.0)) {
      throw Error(ErrorKind::ConstraintViolation,
                  "loss-split factor " + std::to_string(f) + " outside [tau_e, 1]");
    }
    product *= f;
  }
  if (std::abs(product - tau_e) > 1e-12) {
    throw Error(ErrorKind::ConstraintViolation,
                "loss-split factors multiply to " + std::to_string(product) +
                    " instead of tau_e = " + std::to_string(tau_e));
  }
}

BalancedForm downconvert_mm(const BalancedForm& mo, const OneModeChannel& conv) {
  return apply_one_mode(conv, mo, Mode::First);
}

BalancedForm swap(const BalancedForm& mo1, const BalancedForm& mo2) {
  // In excess variables (x, y, k = x y - c^2) the output is
  //   x' = (y1 (1 + x2) + k1) / s,  y' = (y2 (1 + x1) + k2) / s,
  //   k' = (y1 y2 + k1 y2 + k2 y1) / s,  s = a1 + a2.
  const double x1 = mo1.excess_a(), y1 = mo1.excess_b(), k1 = mo1.margin();
  const double x2 = mo2.excess_a(), y2 = mo2.excess_b(), k2 = mo2.margin();
  const double s = 1.0 + x1 + x2;
  return BalancedForm::from_excess((y1 * (1.0 + x2) + k1) / s, (y2 * (1.0 + x1) + k2) / s,
                                   -mo1.c() * mo2.c() / s, (y1 * y2 + k1 * y2 + k2 * y1) / s);
}

namespace {

void check_coop(double value, double cap, const char* label) {
  if (!(value >= 0.0 && value <= cap * (1.0 + 1e-12))) {
    throw Error(ErrorKind::ConstraintViolation,
                std::string(label) + " = " + std::to_string(value) + " outside [0, " +
                    std::to_string(cap) + "]");
  }
}

}  // namespace

ArmLoss resolve_loss_split(const Topology& t, double tau_e,
                           std::span<const double> split) {
  validate_loss_split(t, tau_e, split);
  const auto sites = loss_sites(t);
  ArmLoss out;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    auto& slot = sites[i].kind == LossSiteKind::Converted ? out.converted : out.free;
    slot[static_cast<std::size_t>(sites[i].arm)] *= split[i];
  }
  return out;
}

BalancedForm mm_state(const Topology& t, const DeviceCaps& caps,
                      const std::array<double, 4>& coops, Squeezing r, const ArmLoss& loss) {
  const auto& c = coops;
  check_coop(c[0], caps.d_a, "C_a of transducer 1");
  check_coop(c[1], caps.d_b, "C_b of transducer 1");
  check_coop(c[2], caps.d_a, "C_a of transducer 2");
  check_coop(c[3], caps.d_b, "C_b of transducer 2");

  auto arm_state = [&](std::size_t arm, MoKind kind) {
    DptParams p = source_params(kind, caps, c[2 * arm], c[2 * arm + 1]);
    p.tau_a = caps.tau_a * loss.converted[arm];
    BalancedForm s = mo_state(kind, p, r, caps.rates);
    if (loss.free[arm] != 1.0) {
      const double f = loss.free[arm];
      s = apply_isotropic_excess(s, std::sqrt(f), 0.0, Mode::First);
    }
    return s;
  };

  const BalancedForm first = arm_state(0, t.first);
  if (t.variant == Topology::Variant::Down) {
    const auto conv = conversion_scalars(Direction::Down, c[2], c[3], caps.tau_a, caps.tau_b,
                                         caps.n_th);
    return apply_isotropic_excess(first, conv.gain, conv.added, Mode::First);
  }
  return swap(first, arm_state(1, t.second));
}

BalancedForm mm_state(const Topology& t, const NetworkConfig& cfg) {
  const std::vector<double> split =
      cfg.loss_split.empty() ? default_loss_split(t, cfg.tau_e) : cfg.loss_split;
  return mm_state(t, cfg.caps, cfg.coops, cfg.r, resolve_loss_split(t, cfg.tau_e, split));
}

double mm_log_negativity(const Topology& t, const NetworkConfig& cfg) {
  return log_negativity(mm_state(t, cfg));
}

}  // namespace gausslink
