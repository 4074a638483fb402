#include <benchmark/benchmark.h>

#include <algorithm>

#include "hawkes/cascade.hpp"
#include "hawkes/pdmp.hpp"

namespace {

hawkes::CascadeParams symmetric(int eta) {
  using hawkes::RateFunction;
  return hawkes::CascadeParams({{eta, 1.0, -1, RateFunction::paper_f1()},
                                {eta, 1.0, 1, RateFunction::paper_f2()}});
}

void BM_PdmpFlow(benchmark::State& state) {
  const auto params = symmetric(static_cast<int>(state.range(0)));
  const std::vector<double> start(params.kappa(), 0.5);
  std::vector<double> x = start;
  for (auto _ : state) {
    std::copy(start.begin(), start.end(), x.begin());
    hawkes::pdmp_flow(params, x, 0.3);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PdmpFlow)->Arg(2)->Arg(6)->Arg(12)->Arg(48);

void BM_VectorField(benchmark::State& state) {
  const auto params = symmetric(static_cast<int>(state.range(0)));
  const std::vector<double> x(params.kappa(), 0.1);
  std::vector<double> out(params.kappa());
  for (auto _ : state) {
    hawkes::vector_field(params, x, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_VectorField)->Arg(3)->Arg(12);

void BM_IntegrateLimit(benchmark::State& state) {
  const auto params = symmetric(3);
  for (auto _ : state) {
    auto traj = hawkes::integrate(params, static_cast<double>(state.range(0)));
    benchmark::DoNotOptimize(traj.states.data());
  }
}
BENCHMARK(BM_IntegrateLimit)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
