#include <doctest.h>

#include <cmath>
#include <vector>

#include "gausslink/error.hpp"
#include "gausslink/transducer.hpp"

using namespace gausslink;

namespace {

DptParams red(double ca, double cb, double ta, double tb, double n) {
  return DptParams{ca, cb, ta, tb, n, Pump::Red, Pump::Red};
}

// Conversion channel read off the two-mode channel with the other input in
// vacuum and the other output traced out.
OneModeChannel traced(Direction dir, const DptParams& p) {
  const TwoModeChannel ch = dpt_two_mode_channel(p);
  const int out = dir == Direction::Down ? 2 : 0;
  const int in = dir == Direction::Down ? 0 : 2;
  const Mat2 t = ch.T.block<2, 2>(out, in);
  const Mat2 t_other = ch.T.block<2, 2>(out, out);
  const Mat2 n = ch.N.block<2, 2>(out, out) + 0.5 * t_other * t_other.transpose();
  return {t, n};
}

}  // namespace

TEST_CASE("zero cooperativity channel is the identity") {
  for (Pump pa : {Pump::Red, Pump::Blue}) {
    const DptParams p{0.0, 0.0, 1.0, 1.0, 3.0, pa, Pump::Red};
    const TwoModeChannel ch = dpt_two_mode_channel(p);
    CHECK((ch.T - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(ch.N.cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("zero cooperativity conversion replaces the input with vacuum") {
  const OneModeChannel ch = conversion_channel(Direction::Down, red(0.0, 0.0, 0.8, 0.7, 2.0));
  CHECK(ch.T.cwiseAbs().maxCoeff() == 0.0);
  CHECK((ch.N - 0.5 * Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("conversion matches the traced two-mode channel") {
  for (const DptParams& p : {red(3.7, 2.2, 0.8, 0.6, 0.3), red(120.0, 5.0, 0.95, 0.4, 14.0),
                             red(0.01, 900.0, 0.5, 1.0, 0.0)}) {
    for (Direction dir : {Direction::Down, Direction::Up}) {
      const OneModeChannel a = conversion_channel(dir, p);
      const OneModeChannel b = traced(dir, p);
      CHECK((a.T - b.T).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((a.N - b.N).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(a.gain() <= 0.0);
      const auto s = conversion_scalars(dir, p.ca, p.cb, p.tau_a, p.tau_b, p.n_th);
      CHECK(s.added == doctest::Approx(0.5 * s.gain * s.gain + s.noise - 0.5).epsilon(1e-12));
    }
  }
}

TEST_CASE("two-mode channel noise is symmetric") {
  const TwoModeChannel ch = dpt_two_mode_channel({2.0, 4.0, 0.7, 0.9, 1.5, Pump::Red, Pump::Blue});
  CHECK((ch.N - ch.N.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("conversion transmissivity falls once C_a passes the optimum") {
  double best = 0.0;
  double at_end = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double ca = 0.1 * i;
    const double g = conversion_channel(Direction::Down, red(ca, 4.0, 1.0, 1.0, 0.0)).gain();
    best = std::max(best, g * g);
    at_end = g * g;
  }
  CHECK(best > at_end + 0.1);
}

TEST_CASE("two blue pumps are rejected") {
  const DptParams p{1.0, 1.0, 1.0, 1.0, 0.0, Pump::Blue, Pump::Blue};
  CHECK_THROWS_AS(p.validate(), Error);
  CHECK_FALSE(stability_ok(p, {}));
}

TEST_CASE("singular operating point is rejected") {
  const DptParams p{2.0, 1.0, 1.0, 1.0, 0.0, Pump::Blue, Pump::Red};
  CHECK_THROWS_AS(dpt_two_mode_channel(p), Error);
}

TEST_CASE("first stability criterion") {
  const PhysicalRates rates;
  CHECK(stability_ok({1.5, 1.0, 1.0, 1.0, 0.0, Pump::Blue, Pump::Red}, rates));
  CHECK_FALSE(stability_ok({2.5, 1.0, 1.0, 1.0, 0.0, Pump::Blue, Pump::Red}, rates));
  CHECK(stability_ok({1.0, 1.5, 1.0, 1.0, 0.0, Pump::Red, Pump::Blue}, rates));
  CHECK_FALSE(stability_ok({1.0, 2.5, 1.0, 1.0, 0.0, Pump::Red, Pump::Blue}, rates));
  CHECK(stability_ok({1e6, 1e6, 1.0, 1.0, 0.0, Pump::Red, Pump::Red}, rates));
}

TEST_CASE("second criterion is slack for equal linewidths at equal cooperativities") {
  for (double c : {0.5, 3.0, 80.0}) {
    CHECK(stability_ok({c, c, 1.0, 1.0, 0.0, Pump::Blue, Pump::Red}, {7.0, 7.0, 1.0}));
    CHECK(blue_cooperativity_limit(c, 100.0, 100.0, 1.0) ==
          doctest::Approx(c + 1.0 - kStabilityMargin));
  }
}

TEST_CASE("second criterion binds for a wide blue cavity") {
  // kappa_+ = 1000 gamma_m, kappa_- = gamma_m.
  const double limit = blue_cooperativity_limit(124.0, 1000.0, 1.0, 1.0);
  CHECK(limit == doctest::Approx((124.0 / 1001.0 + 1001.0) * 2.0 / 1000.0 - kStabilityMargin));
  CHECK(limit < 125.0 - 1.0);
}

TEST_CASE("stability is monotone in the blue cooperativity") {
  const PhysicalRates rates{30.0, 50.0, 1.0};
  bool seen_false = false;
  for (int i = 0; i <= 300; ++i) {
    const double cp = 0.02 * i;
    const bool ok = stability_ok({cp, 2.0, 1.0, 1.0, 0.0, Pump::Blue, Pump::Red}, rates);
    if (!ok) seen_false = true;
    if (seen_false) CHECK_FALSE(ok);
  }
  CHECK(seen_false);
}

TEST_CASE("external loss folding") {
  DeviceCaps caps;
  caps.tau_a = 0.8;
  caps.d_a = 10.0;
  const std::vector<double> one{1.0, 1.0};
  auto same = fold_external_loss(caps, 1.0, one);
  CHECK(same[0].tau_a == 0.8);
  CHECK(same[1].tau_a == 0.8);

  const double te = 0.49;
  const std::vector<double> equal{0.7, 0.7};
  auto eq = fold_external_loss(caps, te, equal);
  CHECK(eq[0].tau_a == doctest::Approx(0.8 * std::sqrt(te)));
  CHECK(eq[1].tau_a == doctest::Approx(0.8 * std::sqrt(te)));

  const std::vector<double> all{te, 1.0};
  auto full = fold_external_loss(caps, te, all);
  CHECK(full[0].tau_a == doctest::Approx(0.8 * te));
  CHECK(full[1].tau_a == 0.8);

  const std::vector<double> bad{0.5, 0.5};
  CHECK_THROWS_AS(fold_external_loss(caps, te, bad), Error);
  const std::vector<double> below{0.3, 1.0};
  CHECK_THROWS_AS(fold_external_loss(caps, 0.5, below), Error);
}

TEST_CASE("dB conventions") {
  CHECK(tau_from_db(0.0) == 1.0);
  CHECK(tau_from_db(10.0) == doctest::Approx(0.1));
  CHECK(db_from_tau(0.01) == doctest::Approx(20.0));
  CHECK(tau_from_db(2.0 * 0.18) == doctest::Approx(0.9204).epsilon(1e-4));
  CHECK_THROWS_AS(tau_from_db(-1.0), Error);
  CHECK_THROWS_AS(db_from_tau(0.0), Error);
}
