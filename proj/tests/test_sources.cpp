#include <doctest.h>

#include <cmath>

#include "gausslink/error.hpp"
#include "gausslink/sources.hpp"

using namespace gausslink;

namespace {

DeviceCaps caps_of(double ta, double tb, double n) {
  DeviceCaps c;
  c.d_a = 1e4;
  c.d_b = 1e4;
  c.tau_a = ta;
  c.tau_b = tb;
  c.n_th = n;
  return c;
}

BalancedForm make(MoKind k, double ca, double cb, double ta, double tb, double n, double r) {
  return mo_state(k, source_params(k, caps_of(ta, tb, n), ca, cb), Squeezing(r));
}

}  // namespace

TEST_CASE("source states against the full-matrix reference") {
  // Values from tests/oracle/oracle.py (50-digit arithmetic on 6x6 covariance
  // matrices pushed through the two-mode transducer channel).
  struct Row {
    MoKind kind;
    double ca, cb, a, b, c, e;
  };
  const Row rows[] = {
      {MoKind::EO, 3.7, 2.2, 0.6687174731524223, 0.58865472893099302, 0.25441840512662924,
       0.4299739662990552},
      {MoKind::EM, 3.7, 2.2, 0.62999058274321734, 0.6687174731524223, 0.25441840512662924,
       0.34300096324223309},
      {MoKind::IO, 2.9, 2.2, 361.38888888888889, 188.23333333333333, 260.55130155257475,
       0.98836728501003979},
      {MoKind::IM, 3.7, 4.1, 145.21111111111111, 137.16666666666667, 140.91874201770271,
       1.2327301800931059},
  };
  for (const Row& row : rows) {
    CAPTURE(to_string(row.kind));
    const BalancedForm s = make(row.kind, row.ca, row.cb, 0.8, 0.6, 0.3, 0.4);
    CHECK(s.a() == doctest::Approx(row.a).epsilon(1e-13));
    CHECK(s.b() == doctest::Approx(row.b).epsilon(1e-13));
    CHECK(std::abs(s.c()) == doctest::Approx(row.c).epsilon(1e-13));
    CHECK(log_negativity(s) == doctest::Approx(row.e).epsilon(1e-12));
  }
}

TEST_CASE("correlation signs") {
  CHECK(make(MoKind::EO, 3.0, 2.0, 0.8, 0.6, 0.3, 0.4).c() < 0.0);
  CHECK(make(MoKind::EM, 3.0, 2.0, 0.8, 0.6, 0.3, 0.4).c() < 0.0);
  CHECK(make(MoKind::IO, 2.0, 2.0, 0.8, 0.6, 0.3, 0.0).c() > 0.0);
  CHECK(make(MoKind::IM, 2.0, 2.0, 0.8, 0.6, 0.3, 0.0).c() > 0.0);
  const BalancedForm s = make(MoKind::EO, 3.0, 2.0, 0.8, 0.6, 0.3, 0.4);
  CHECK(log_negativity(BalancedForm(s.a(), s.b(), -s.c())) ==
        doctest::Approx(log_negativity(s)).epsilon(1e-14));
}

TEST_CASE("unsqueezed EO source is a product state") {
  const BalancedForm s = make(MoKind::EO, 3.0, 2.0, 0.8, 0.6, 0.3, 0.0);
  CHECK(s.a() == 0.5);
  CHECK(s.c() == 0.0);
  CHECK_FALSE(is_entangled(s));
}

TEST_CASE("extrinsic sources entangle exactly below tau C") {
  const double ta = 0.8, tb = 0.6, ca = 3.7, cb = 2.2;
  for (double f : {0.5, 0.999999, 1.000001, 2.0}) {
    CAPTURE(f);
    const bool below = f < 1.0;
    CHECK(is_entangled(make(MoKind::EO, ca, cb, ta, tb, f * ta * ca, 0.4)) == below);
    CHECK(is_entangled(make(MoKind::EM, ca, cb, ta, tb, f * tb * cb, 0.4)) == below);
  }
  CHECK_FALSE(is_entangled(make(MoKind::EO, ca, cb, ta, tb, ta * ca, 0.4)));
}

TEST_CASE("EO boundary by bisection") {
  const double ta = 0.7, tb = 0.9, ca = 12.0, cb = 5.0;
  double lo = 0.0, hi = 100.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (log_negativity(make(MoKind::EO, ca, cb, ta, tb, mid, 0.3)) > 0.0 ? lo : hi) = mid;
  }
  CHECK(lo == doctest::Approx(ta * ca).epsilon(1e-9));
}

TEST_CASE("intrinsic sources are always entangled") {
  for (double n : {0.0, 1.0, 1e3, 1e6}) {
    CHECK(log_negativity(make(MoKind::IO, 2.0, 1.5, 0.6, 0.5, n, 0.0)) > 0.0);
    CHECK(log_negativity(make(MoKind::IM, 1.5, 2.0, 0.6, 0.5, n, 0.0)) > 0.0);
  }
}

TEST_CASE("closed forms match channel composition") {
  const DeviceCaps caps = caps_of(0.83, 0.41, 2.5);
  for (MoKind k : kAllMoKinds) {
    CAPTURE(to_string(k));
    const double ca = k == MoKind::IM ? 6.0 : 5.5;
    const double cb = k == MoKind::IO ? 6.0 : 5.5;
    const DptParams p = source_params(k, caps, ca, cb);
    const BalancedForm a = mo_state(k, p, Squeezing(0.7));
    const BalancedForm b = mo_state_via_composition(k, p, Squeezing(0.7));
    const double scale = std::max(1.0, std::abs(a.a()));
    CHECK(std::abs(a.a() - b.a()) <= 1e-12 * scale);
    CHECK(std::abs(a.b() - b.b()) <= 1e-12 * scale);
    CHECK(std::abs(a.c() - b.c()) <= 1e-12 * scale);
    CHECK(physicality_check(a.to_covariance()));
  }
}

TEST_CASE("exchanging the modes maps EO to EM and IO to IM") {
  const double ca = 3.1, cb = 4.6, ta = 0.9, tb = 0.35, n = 0.7;
  const BalancedForm eo = make(MoKind::EO, ca, cb, ta, tb, n, 0.5);
  const BalancedForm em = make(MoKind::EM, cb, ca, tb, ta, n, 0.5).exchanged();
  CHECK(eo.a() == doctest::Approx(em.a()).epsilon(1e-14));
  CHECK(eo.b() == doctest::Approx(em.b()).epsilon(1e-14));
  CHECK(eo.c() == doctest::Approx(em.c()).epsilon(1e-14));

  const BalancedForm io = make(MoKind::IO, 4.0, 3.5, ta, tb, n, 0.0);
  const BalancedForm im = make(MoKind::IM, 3.5, 4.0, tb, ta, n, 0.0).exchanged();
  CHECK(io.a() == doctest::Approx(im.a()).epsilon(1e-14));
  CHECK(io.b() == doctest::Approx(im.b()).epsilon(1e-14));
  CHECK(io.c() == doctest::Approx(im.c()).epsilon(1e-14));
}

TEST_CASE("intrinsic sources reject unstable points and wrong pumps") {
  const DeviceCaps caps = caps_of(1.0, 1.0, 0.0);
  CHECK_THROWS_AS(mo_state(MoKind::IO, source_params(MoKind::IO, caps, 3.0, 1.0), Squeezing(0.0)),
                  Error);
  CHECK_THROWS_AS(mo_state(MoKind::EO, source_params(MoKind::IO, caps, 1.0, 1.0), Squeezing(0.0)),
                  Error);
  CHECK(parse_mo_kind("IM") == MoKind::IM);
  CHECK_FALSE(parse_mo_kind("XX").has_value());
}
