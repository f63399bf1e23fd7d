#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gausslink/error.hpp"
#include "gausslink/sweep.hpp"

using namespace gausslink;

TEST_CASE("grids") {
  const auto g = log_grid(1e-2, 1e4, 7);
  REQUIRE(g.size() == 7);
  CHECK(g.front() == 1e-2);
  CHECK(g.back() == 1e4);
  CHECK(g[3] == doctest::Approx(10.0));
  const auto l = linear_grid(0.0, 20.0, 201);
  CHECK(l[100] == doctest::Approx(10.0));
  CHECK(l.back() == 20.0);
  CHECK(linear_grid(3.0, 3.0, 1) == std::vector<double>{3.0});
}

TEST_CASE("parallel map keeps index order and rethrows") {
  const auto v = parallel_map(1000, [](std::size_t i) { return static_cast<double>(i * i); }, 4);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<double>(i * i));
  CHECK_THROWS_AS(parallel_map(
                      50,
                      [](std::size_t i) -> int {
                        if (i == 17) throw std::runtime_error("boom");
                        return 0;
                      },
                      4),
                  std::runtime_error);
}

TEST_CASE("threshold grid: serial and parallel kernels agree bit for bit") {
  std::vector<DeviceCaps> caps;
  for (double da : {0.5, 5.0, 50.0}) {
    DeviceCaps c;
    c.d_a = da;
    c.d_b = 20.0;
    c.tau_a = 0.9;
    c.tau_b = 0.8;
    caps.push_back(c);
  }
  const auto tops = Topology::symmetric_all();
  const auto s = threshold_grid(tops, caps, Squeezing(0.5), Exec::Serial, 1);
  const auto p = threshold_grid(tops, caps, Squeezing(0.5), Exec::Parallel, 4);
  REQUIRE(s.size() == p.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < tops.size(); ++j) {
      CHECK(s[i][j].n_th_max == p[i][j].n_th_max);
      CHECK(s[i][j].argmax == p[i][j].argmax);
    }
  }
}

TEST_CASE("negativity grid: serial and parallel kernels agree bit for bit") {
  DeviceCaps caps;
  caps.d_a = 200.0;
  caps.d_b = 12.0;
  caps.tau_a = 0.8;
  caps.tau_b = 0.5;
  caps.n_th = 4.0;
  const std::vector<double> tau_e{1.0, 0.8, 0.5};
  const std::vector<Topology> tops{Topology::down(MoKind::EO), Topology::swap_sym(MoKind::IM),
                                   Topology::swap_asym(MoKind::EO, MoKind::IM)};
  const auto s = negativity_grid(tops, caps, tau_e, Squeezing(0.8), Exec::Serial, 1);
  const auto p = negativity_grid(tops, caps, tau_e, Squeezing(0.8), Exec::Parallel, 4);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < tops.size(); ++j) {
      CHECK(s[i][j].e == p[i][j].e);
      CHECK(s[i][j].split == p[i][j].split);
      CHECK(s[i][j].coops == p[i][j].coops);
    }
  }
}
