#include "gausslink/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "gausslink/error.hpp"

namespace gausslink {

namespace {

double bisect_stable_limit(double cap, const std::function<bool(double)>& stable) {
  if (stable(cap)) return cap;
  double lo = 0.0;
  double hi = cap;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (stable(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

ThresholdResult analytic_result(double raw, std::array<double, 4> argmax) {
  ThresholdResult res;
  res.raw = raw;
  res.n_th_max = raw > 0.0 ? raw : 0.0;
  res.cannot_entangle = !(raw > 0.0);
  res.method = ThresholdMethod::Analytic;
  res.argmax = argmax;
  return res;
}

double em_down_value(const DeviceCaps& caps, double ca, double cb) {
  const double ta = caps.tau_a;
  const double s = 1.0 + ca + cb;
  return 4.0 * ta * ta * caps.tau_b * ca * cb * caps.d_a /
         (s * s + 4.0 * ta * ta * ca * caps.d_a);
}

double em_swap_value(const DeviceCaps& caps, double ca, double cb) {
  if (!(caps.tau_a * ca > 0.0)) return -std::numeric_limits<double>::infinity();
  const double s = 1.0 + ca + cb;
  return caps.tau_b * cb - s * s / (8.0 * caps.tau_a * ca);
}

}  // namespace

double max_stable_ca(const DeviceCaps& caps, double cb) {
  caps.validate();
  return bisect_stable_limit(caps.d_a, [&](double ca) {
    return stability_ok(caps.at(ca, cb, Pump::Blue, Pump::Red), caps.rates);
  });
}

double max_stable_cb(const DeviceCaps& caps, double ca) {
  caps.validate();
  return bisect_stable_limit(caps.d_b, [&](double cb) {
    return stability_ok(caps.at(ca, cb, Pump::Red, Pump::Blue), caps.rates);
  });
}

ThresholdResult analytic_threshold(const Topology& t, const DeviceCaps& caps, Squeezing r,
                                   std::optional<std::array<double, 2>> em_coops) {
  caps.validate();
  if (!t.is_symmetric()) {
    throw Error(ErrorKind::Unsupported, "no closed-form threshold for " + t.name());
  }
  const bool down = t.variant == Topology::Variant::Down;
  const double ta = caps.tau_a;
  const double da = caps.d_a;
  const double db = caps.d_b;
  switch (t.first) {
    case MoKind::EO: {
      const double rr = r.r();
      const double raw = down ? ta * da * (1.0 - std::exp(-2.0 * rr)) / 2.0
                              : ta * da * std::sinh(rr) * std::sinh(rr) / std::cosh(2.0 * rr);
      return analytic_result(raw, {da, db, da, db});
    }
    case MoKind::EM: {
      if (!em_coops) {
        throw Error(ErrorKind::InvalidArgument,
                    "EM thresholds need the source cooperativities (C_a, C_b)");
      }
      const double ca = (*em_coops)[0];
      const double cb = (*em_coops)[1];
      if (down) return analytic_result(em_down_value(caps, ca, cb), {ca, cb, da, db});
      return analytic_result(em_swap_value(caps, ca, cb), {ca, cb, ca, cb});
    }
    case MoKind::IO: {
      const double cbar = max_stable_ca(caps, db);
      if (down) {
        const double raw = (std::sqrt(cbar * (cbar + 4.0 * ta * ta * da)) - cbar) / 2.0;
        return analytic_result(raw, {cbar, db, da, db});
      }
      return analytic_result((2.0 * ta - 1.0) * cbar, {cbar, db, cbar, db});
    }
    case MoKind::IM: {
      const double cb = max_stable_cb(caps, da);
      if (down) {
        const double raw =
            (std::sqrt((1.0 + da) * (1.0 + da) + 4.0 * ta * ta * da * da) - da - 1.0) / 2.0;
        return analytic_result(raw, {da, cb, da, db});
      }
      return analytic_result((2.0 * ta - 1.0) * da - 1.0, {da, cb, da, cb});
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown source kind");
}

ThresholdResult em_threshold_cb_only(const Topology& t, const DeviceCaps& caps, Squeezing r) {
  if (!t.is_symmetric() || t.first != MoKind::EM) {
    throw Error(ErrorKind::InvalidArgument, "C_b-only optimization applies to EM rows only");
  }
  caps.validate();
  const bool down = t.variant == Topology::Variant::Down;
  const double ca = caps.d_a;
  auto value = [&](double cb) {
    return down ? em_down_value(caps, ca, cb) : em_swap_value(caps, ca, cb);
  };
  const double cb = golden_section_argmin([&](double x) { return -value(x); }, 0.0, caps.d_b);
  return analytic_threshold(t, caps, r, std::array<double, 2>{ca, cb});
}

CoopSpace::CoopSpace(const Topology& t, const DeviceCaps& caps)
    : topology_(t), caps_(caps), dim_(t.variant == Topology::Variant::SwapSym ? 2 : 4) {}

std::array<double, 2> CoopSpace::source(MoKind kind, double u0, double u1) const {
  const auto& k = caps_.rates;
  if (kind == MoKind::IO) {
    const double cb = u1 * caps_.d_b;
    const double cap = std::min(caps_.d_a, blue_cooperativity_limit(cb, k.kappa_a, k.kappa_b, k.gamma_m));
    return {u0 * std::max(cap, 0.0), cb};
  }
  if (kind == MoKind::IM) {
    const double ca = u0 * caps_.d_a;
    const double cap = std::min(caps_.d_b, blue_cooperativity_limit(ca, k.kappa_b, k.kappa_a, k.gamma_m));
    return {ca, u1 * std::max(cap, 0.0)};
  }
  return {u0 * caps_.d_a, u1 * caps_.d_b};
}

std::array<double, 4> CoopSpace::map(std::span<const double> u) const {
  const auto s1 = source(topology_.first, u[0], u[1]);
  switch (topology_.variant) {
    case Topology::Variant::Down:
      return {s1[0], s1[1], u[2] * caps_.d_a, u[3] * caps_.d_b};
    case Topology::Variant::SwapSym:
      return {s1[0], s1[1], s1[0], s1[1]};
    case Topology::Variant::SwapAsym: {
      const auto s2 = source(topology_.second, u[2], u[3]);
      return {s1[0], s1[1], s2[0], s2[1]};
    }
  }
  return {};
}

namespace {

// Inverse of CoopSpace::map for warm starts; exact for points it produced.
std::vector<double> unmap(const Topology& t, const DeviceCaps& caps,
                          const std::array<double, 4>& c, int dim) {
  auto ratio = [](double x, double cap) { return cap > 0.0 ? std::clamp(x / cap, 0.0, 1.0) : 0.0; };
  const auto& k = caps.rates;
  auto src = [&](MoKind kind, double ca, double cb) -> std::array<double, 2> {
    if (kind == MoKind::IO) {
      const double cap = std::min(caps.d_a, blue_cooperativity_limit(cb, k.kappa_a, k.kappa_b, k.gamma_m));
      return {ratio(ca, cap), ratio(cb, caps.d_b)};
    }
    if (kind == MoKind::IM) {
      const double cap = std::min(caps.d_b, blue_cooperativity_limit(ca, k.kappa_b, k.kappa_a, k.gamma_m));
      return {ratio(ca, caps.d_a), ratio(cb, cap)};
    }
    return {ratio(ca, caps.d_a), ratio(cb, caps.d_b)};
  };
  const auto s1 = src(t.first, c[0], c[1]);
  if (dim == 2) return {s1[0], s1[1]};
  if (t.variant == Topology::Variant::Down) {
    return {s1[0], s1[1], ratio(c[2], caps.d_a), ratio(c[3], caps.d_b)};
  }
  const auto s2 = src(t.second, c[2], c[3]);
  return {s1[0], s1[1], s2[0], s2[1]};
}

}  // namespace

double coop_threshold(const Topology& t, const DeviceCaps& caps, const std::array<double, 4>& coops,
                      Squeezing r, const ArmLoss& loss) {
  DeviceCaps at_n = caps;
  auto margin = [&](double n) {
    at_n.n_th = n;
    return mm_state(t, at_n, coops, r, loss).margin();
  };
  double lo = 0.0;
  double f_lo = margin(lo);
  if (!(f_lo < 0.0)) return 0.0;
  double hi = std::max(caps.tau_a * caps.d_a, 1e-300);
  double f_hi = margin(hi);
  for (int k = 0; k < 64 && f_hi < 0.0; ++k) {
    lo = hi;
    f_lo = f_hi;
    hi = 2.0 * hi + 1.0;
    f_hi = margin(hi);
  }
  if (f_hi < 0.0) return hi;
  if (f_hi == 0.0) return hi;
  std::uintmax_t iters = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      margin, lo, hi, f_lo, f_hi, [](double a, double b) { return b - a <= 1e-13 * b; }, iters);
  // The lower end is where the margin is negative.
  return bracket.first;
}

CoopThreshold max_coop_threshold(const Topology& t, const DeviceCaps& caps, Squeezing r,
                                 const ArmLoss& loss, const BoxOptions& box) {
  caps.validate();
  const CoopSpace space(t, caps);
  BoxOptions opts = box;
  opts.stop_below.reset();
  opts.tie_key = [&space](std::span<const double> u) {
    const auto c = space.map(u);
    return std::vector<double>(c.begin(), c.end());
  };
  const BoxResult best = minimize_box(
      [&](std::span<const double> u) { return -coop_threshold(t, caps, space.map(u), r, loss); },
      space.dim(), opts);
  CoopThreshold out;
  out.coops = space.map(best.x);
  out.n_th_max = -best.value;
  out.evaluations = best.evaluations;
  return out;
}

CoopOptimum optimize_cooperativities(const Topology& t, const DeviceCaps& caps, double n_th,
                                     Squeezing r, const OptimizeSettings& settings) {
  caps.validate();
  DeviceCaps at_n = caps;
  at_n.n_th = n_th;
  const std::vector<double> split =
      settings.loss_split.empty() ? default_loss_split(t, settings.tau_e) : settings.loss_split;
  const ArmLoss loss = resolve_loss_split(t, settings.tau_e, split);

  const CoopSpace space(t, caps);
  BoxOptions box = settings.box;
  for (const auto& w : settings.warm_starts) box.extra_starts.push_back(unmap(t, caps, w, space.dim()));
  if (settings.threshold_seed) {
    const CoopThreshold seed = max_coop_threshold(t, caps, r, loss, settings.box);
    if (seed.n_th_max > n_th) box.extra_starts.push_back(unmap(t, caps, seed.coops, space.dim()));
  }
  box.tie_key = [&space](std::span<const double> u) {
    const auto c = space.map(u);
    return std::vector<double>(c.begin(), c.end());
  };
  const BoxObjective objective = [&](std::span<const double> u) {
    return nu_offset(mm_state(t, at_n, space.map(u), r, loss));
  };
  const BoxResult best = minimize_box(objective, space.dim(), box);

  CoopOptimum out;
  out.coops = space.map(best.x);
  out.nu_offset = best.value;
  out.nu = kVacuumVariance + best.value;
  out.e = log_negativity_from_offset(best.value);
  out.evaluations = best.evaluations;
  return out;
}

ThresholdResult numeric_threshold(const Topology& t, const DeviceCaps& caps, Squeezing r,
                                  const BoxOptions& box) {
  caps.validate();
  ThresholdResult res;
  res.method = ThresholdMethod::Bisection;

  std::vector<std::array<double, 4>> warm;
  const CoopThreshold seed = max_coop_threshold(t, caps, r, {}, box);
  if (seed.n_th_max > 0.0) warm.push_back(seed.coops);
  std::optional<std::array<double, 4>> last;
  auto entangled_at = [&](double n) {
    OptimizeSettings s;
    s.box = box;
    s.box.stop_below = 0.0;
    s.warm_starts = warm;
    if (last) s.warm_starts.push_back(*last);
    s.threshold_seed = false;
    const CoopOptimum opt = optimize_cooperativities(t, caps, n, r, s);
    ++res.iterations;
    if (opt.nu_offset < 0.0) {
      last = opt.coops;
      return true;
    }
    return false;
  };

  double hi = caps.tau_a * caps.d_a;
  if (!(hi > 0.0) || !entangled_at(0.0)) {
    res.cannot_entangle = true;
    return res;
  }
  for (int k = 0; k < 64 && entangled_at(hi); ++k) hi = 2.0 * hi + 1.0;
  double lo = 0.0;
  for (int k = 0; k < 200 && hi - lo > 1e-12 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (entangled_at(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  res.n_th_max = 0.5 * (lo + hi);
  res.raw = res.n_th_max;
  OptimizeSettings s;
  s.box = box;
  s.warm_starts = warm;
  if (last) s.warm_starts.push_back(*last);
  s.threshold_seed = false;
  res.argmax = optimize_cooperativities(t, caps, lo, r, s).coops;
  return res;
}

std::vector<std::vector<double>> candidate_loss_splits(const Topology& t, double tau_e) {
  const std::size_t m = loss_sites(t).size();
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> v(m, 1.0);
    v[i] = tau_e;
    out.push_back(v);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      std::vector<double> v(m, 1.0);
      v[i] = v[j] = std::sqrt(tau_e);
      out.push_back(v);
    }
  }
  return out;
}

SplitOptimum optimize_loss_split(const Topology& t, const DeviceCaps& caps, double n_th,
                                 Squeezing r, double tau_e, const BoxOptions& box) {
  std::vector<std::vector<double>> candidates;
  const bool closed_form = t.variant == Topology::Variant::Down ||
                           (t.variant == Topology::Variant::SwapSym && t.first != MoKind::EO);
  if (closed_form) {
    candidates.push_back(default_loss_split(t, tau_e));
  } else {
    candidates = candidate_loss_splits(t, tau_e);
  }
  SplitOptimum best;
  best.nu_offset = std::numeric_limits<double>::infinity();
  for (const auto& split : candidates) {
    OptimizeSettings s;
    s.tau_e = tau_e;
    s.loss_split = split;
    s.box = box;
    const CoopOptimum opt = optimize_cooperativities(t, caps, n_th, r, s);
    if (opt.nu_offset < best.nu_offset) {
      best.split = split;
      best.coops = opt.coops;
      best.nu = opt.nu;
      best.nu_offset = opt.nu_offset;
      best.e = opt.e;
    }
  }
  return best;
}

}  // namespace gausslink
