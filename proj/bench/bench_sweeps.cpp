// Serial reference vs OpenMP kernels on the two sweep shapes used by the CLI.

#include <benchmark/benchmark.h>

#include "gausslink/experiments.hpp"

namespace {

using namespace gausslink;

std::vector<DeviceCaps> da_grid(std::size_t points) {
  std::vector<DeviceCaps> caps;
  for (double d : log_grid(1e-2, 1e4, points)) {
    DeviceCaps c;
    c.d_a = d;
    c.d_b = 1e2;
    c.tau_b = 0.75;
    caps.push_back(c);
  }
  return caps;
}

void BM_ThresholdGrid(benchmark::State& state) {
  const auto exec = state.range(0) == 0 ? Exec::Serial : Exec::Parallel;
  const auto caps = da_grid(16);
  const auto tops = Topology::symmetric_all();
  for (auto _ : state) {
    benchmark::DoNotOptimize(threshold_grid(tops, caps, Squeezing(0.58), exec, 0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(caps.size() * tops.size()));
}
BENCHMARK(BM_ThresholdGrid)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_NegativityGrid(benchmark::State& state) {
  const auto exec = state.range(0) == 0 ? Exec::Serial : Exec::Parallel;
  const auto tau_e = [] {
    std::vector<double> v;
    for (double l : linear_grid(0.0, 10.0, 16)) v.push_back(tau_from_db(l));
    return v;
  }();
  const auto tops = Topology::all();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        negativity_grid(tops, brubaker2022_caps(), tau_e, Squeezing::from_db(10.0), exec, 0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(tau_e.size() * tops.size()));
}
BENCHMARK(BM_NegativityGrid)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
