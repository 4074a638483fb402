#include <benchmark/benchmark.h>

#include "hawkes/cascade.hpp"

namespace {

hawkes::CascadeParams symmetric(int eta, double nu1, double nu2) {
  using hawkes::RateFunction;
  return hawkes::CascadeParams({{eta, nu1, -1, RateFunction::paper_f1()},
                                {eta, nu2, 1, RateFunction::paper_f2()}});
}

void BM_RootsClosedForm(benchmark::State& state) {
  const auto params = symmetric(static_cast<int>(state.range(0)), 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(hawkes::characteristic_roots(params, -2.15));
}
BENCHMARK(BM_RootsClosedForm)->Arg(3)->Arg(11);

void BM_RootsCompanion(benchmark::State& state) {
  const auto params = symmetric(static_cast<int>(state.range(0)), 0.9, 1.2);
  for (auto _ : state) benchmark::DoNotOptimize(hawkes::characteristic_roots(params, -2.15));
}
BENCHMARK(BM_RootsCompanion)->Arg(3)->Arg(11);

void BM_HopfScan(benchmark::State& state) {
  const auto params = symmetric(3, 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(hawkes::hopf_scan(params, 0.5, 1.6, 0.01));
  state.SetLabel("nu in [0.5, 1.6], step 0.01");
}
BENCHMARK(BM_HopfScan)->Unit(benchmark::kMillisecond);

}  // namespace
