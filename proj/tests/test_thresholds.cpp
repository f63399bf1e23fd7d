#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "gausslink/error.hpp"
#include "gausslink/thresholds.hpp"

using namespace gausslink;

namespace {

DeviceCaps caps_of(double da, double db, double ta, double tb, double n = 0.0) {
  DeviceCaps c;
  c.d_a = da;
  c.d_b = db;
  c.tau_a = ta;
  c.tau_b = tb;
  c.n_th = n;
  return c;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("closed-form thresholds") {
  const DeviceCaps caps = caps_of(100.0, 1e3, 1.0, 1.0);
  const Squeezing r(0.58);
  CHECK(analytic_threshold(Topology::down(MoKind::EO), caps, r).n_th_max ==
        doctest::Approx(34.325690955869735).epsilon(1e-13));
  CHECK(analytic_threshold(Topology::swap_sym(MoKind::EO), caps, r).n_th_max ==
        doctest::Approx(21.456458118302179).epsilon(1e-13));
  const DeviceCaps im = caps_of(100.0, 1e3, 0.75, 1.0);
  CHECK(analytic_threshold(Topology::swap_sym(MoKind::IM), im, r).n_th_max ==
        doctest::Approx(49.0).epsilon(1e-12));
  CHECK_THROWS_AS(analytic_threshold(Topology::swap_asym(MoKind::EO, MoKind::IM), caps, r), Error);
}

TEST_CASE("bisection reproduces the closed forms") {
  const DeviceCaps caps = caps_of(100.0, 1e3, 1.0, 1.0);
  const Squeezing r(0.58);
  for (const Topology& t : {Topology::down(MoKind::EO), Topology::swap_sym(MoKind::EO)}) {
    CAPTURE(t.name());
    const auto num = numeric_threshold(t, caps, r);
    CHECK(num.method == ThresholdMethod::Bisection);
    CHECK(rel(num.n_th_max, analytic_threshold(t, caps, r).n_th_max) < 1e-6);
  }
  const DeviceCaps im = caps_of(100.0, 1e3, 0.75, 1.0);
  CHECK(rel(numeric_threshold(Topology::swap_sym(MoKind::IM), im, r).n_th_max, 49.0) < 1e-6);
  CHECK(rel(numeric_threshold(Topology::down(MoKind::IM), im, r).n_th_max,
            analytic_threshold(Topology::down(MoKind::IM), im, r).n_th_max) < 1e-6);
  CHECK(rel(numeric_threshold(Topology::down(MoKind::IO), im, r).n_th_max,
            analytic_threshold(Topology::down(MoKind::IO), im, r).n_th_max) < 1e-6);
}

TEST_CASE("EM down-conversion threshold with both source cooperativities optimized") {
  // Maxima of the closed form over (C_a, C_b) from tests/oracle/oracle.py.
  const Squeezing r(0.58);
  const auto a = numeric_threshold(Topology::down(MoKind::EM),
                                   caps_of(6165.9500186148225, 100.0, 1.0, 0.75), r);
  CHECK(a.n_th_max == doctest::Approx(73.791278057508061).epsilon(1e-9));
  const auto b = numeric_threshold(Topology::down(MoKind::EM), caps_of(100.0, 50.0, 1.0, 0.75), r);
  CHECK(b.n_th_max == doctest::Approx(24.834437086092715).epsilon(1e-9));
}

TEST_CASE("EM swapping never entangles at tiny D_b") {
  const auto res = numeric_threshold(Topology::swap_sym(MoKind::EM), caps_of(1e3, 1e-2, 1.0, 0.75),
                                     Squeezing(0.58));
  CHECK(res.n_th_max == 0.0);
  CHECK(res.cannot_entangle);
}

TEST_CASE("boundary consistency") {
  const DeviceCaps base = caps_of(50.0, 20.0, 0.9, 0.8);
  const Squeezing r(0.5);
  for (const Topology& t : Topology::symmetric_all()) {
    CAPTURE(t.name());
    const auto res = numeric_threshold(t, base, r);
    if (res.n_th_max <= 0.0) continue;
    const auto below = optimize_cooperativities(t, base, res.n_th_max * (1.0 - 1e-6), r);
    const auto above = optimize_cooperativities(t, base, res.n_th_max * (1.0 + 1e-6), r);
    CHECK(below.e > 0.0);
    CHECK(above.e == 0.0);
  }
}

TEST_CASE("optimizer is never worse than the all-maximal corner") {
  const DeviceCaps caps = caps_of(40.0, 8.0, 0.85, 0.7, 3.0);
  const Squeezing r(0.6);
  for (const Topology& t : Topology::all()) {
    CAPTURE(t.name());
    const auto opt = optimize_cooperativities(t, caps, caps.n_th, r);
    // Intrinsic sources sit at their stability limit instead of the cap.
    auto corner_pair = [&](MoKind k) -> std::array<double, 2> {
      if (k == MoKind::IO) return {max_stable_ca(caps, caps.d_b), caps.d_b};
      if (k == MoKind::IM) return {caps.d_a, max_stable_cb(caps, caps.d_a)};
      return {caps.d_a, caps.d_b};
    };
    const auto p1 = corner_pair(t.first);
    const auto p2 = t.is_swap() ? corner_pair(t.second) : std::array<double, 2>{caps.d_a, caps.d_b};
    NetworkConfig cfg;
    cfg.caps = caps;
    cfg.coops = {p1[0], p1[1], p2[0], p2[1]};
    cfg.r = r;
    CHECK(opt.e >= mm_log_negativity(t, cfg) - 1e-12);
  }
}

TEST_CASE("thresholds never exceed tau_a D_a and do not fall with D_a") {
  const Squeezing r(0.58);
  for (const Topology& t : Topology::symmetric_all()) {
    CAPTURE(t.name());
    double prev = 0.0;
    for (double da : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
      const DeviceCaps caps = caps_of(da, 100.0, 0.9, 0.75);
      const double n = numeric_threshold(t, caps, r).n_th_max;
      CHECK(n <= caps.tau_a * da * (1.0 + 1e-12));
      CHECK(n >= prev * (1.0 - 1e-9));
      prev = n;
    }
  }
}

TEST_CASE("IO optimum binds the stability limit") {
  const DeviceCaps caps = caps_of(1e3, 20.0, 0.9, 0.8, 5.0);
  const auto opt = optimize_cooperativities(Topology::down(MoKind::IO), caps, caps.n_th, Squeezing(0.0));
  CHECK(opt.e > 0.0);
  CHECK(opt.coops[0] == doctest::Approx(max_stable_ca(caps, opt.coops[1])).epsilon(1e-6));
}

TEST_CASE("EM optimum keeps C_b below its cap") {
  const DeviceCaps caps = caps_of(100.0, 1e3, 1.0, 0.75, 5.0);
  const auto opt = optimize_cooperativities(Topology::down(MoKind::EM), caps, caps.n_th, Squeezing(0.58));
  CHECK(opt.e > 0.0);
  CHECK(opt.coops[1] < caps.d_b - 1.0);
}

TEST_CASE("largest stable blue cooperativity") {
  CHECK(max_stable_ca(caps_of(0.5, 100.0, 1.0, 1.0), 10.0) == doctest::Approx(0.5));
  CHECK(max_stable_ca(caps_of(1e3, 100.0, 1.0, 1.0), 10.0) == doctest::Approx(11.0).epsilon(1e-9));
  CHECK(max_stable_cb(caps_of(10.0, 1e3, 1.0, 1.0), 10.0) == doctest::Approx(11.0).epsilon(1e-9));
  CHECK(max_stable_cb(caps_of(10.0, 3.0, 1.0, 1.0), 10.0) == doctest::Approx(3.0));
}

TEST_CASE("microwave-dominated caps make the down-conversion thresholds coincide") {
  // IO differs from IM through the +1 in the stability limit, a 1/D_a effect.
  const Squeezing r(0.92);
  const DeviceCaps caps = caps_of(1e4, 1e7, 0.5, 1.0);
  std::vector<double> v;
  for (MoKind k : {MoKind::EM, MoKind::IO, MoKind::IM}) {
    v.push_back(numeric_threshold(Topology::down(k), caps, r).n_th_max);
  }
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  CHECK((*hi - *lo) / *hi < 1e-3);
}

TEST_CASE("fixed-cooperativity threshold brackets the margin sign change") {
  const DeviceCaps caps = caps_of(100.0, 20.0, 0.9, 0.8);
  const std::array<double, 4> coops{60.0, 12.0, 80.0, 15.0};
  const Squeezing r(0.7);
  for (const Topology& t : {Topology::down(MoKind::EO), Topology::swap_sym(MoKind::EO),
                            Topology::down(MoKind::EM)}) {
    CAPTURE(t.name());
    const double n = coop_threshold(t, caps, coops, r);
    REQUIRE(n > 0.0);
    DeviceCaps lo = caps, hi = caps;
    lo.n_th = n * (1.0 - 1e-9);
    hi.n_th = n * (1.0 + 1e-9);
    CHECK(is_entangled(mm_state(t, lo, coops, r, {})));
    CHECK_FALSE(is_entangled(mm_state(t, hi, coops, r, {})));
  }
}

TEST_CASE("loss split candidates include the vertices") {
  const auto c = candidate_loss_splits(Topology::swap_sym(MoKind::EO), 0.5);
  CHECK(c.size() >= 4);
  for (const auto& s : c) CHECK_NOTHROW(validate_loss_split(Topology::swap_sym(MoKind::EO), 0.5, s));
}
