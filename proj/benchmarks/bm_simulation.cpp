#include <benchmark/benchmark.h>

#include "hawkes/diffusion.hpp"
#include "hawkes/pdmp.hpp"

namespace {

hawkes::CascadeParams base_pair() {
  using hawkes::RateFunction;
  return hawkes::CascadeParams({{3, 1.0, -1, RateFunction::paper_f1()},
                                {2, 1.0, 1, RateFunction::paper_f2()}});
}

void BM_SimulatePdmp(benchmark::State& state) {
  const auto params = base_pair();
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const hawkes::PopulationSizes sizes({n, n});
  std::uint64_t seed = 1;
  std::uint64_t candidates = 0;
  for (auto _ : state) {
    const auto r = hawkes::simulate_pdmp(params, sizes, 10.0, seed++);
    candidates += r.candidate_count;
    benchmark::DoNotOptimize(r.log.events.data());
  }
  state.counters["candidates/s"] =
      benchmark::Counter(static_cast<double>(candidates), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SimulatePdmp)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SimulateGeneral(benchmark::State& state) {
  const auto params = base_pair();
  const std::vector<hawkes::RateFunction> rates{params.population(0).rate, params.population(1).rate};
  const hawkes::PopulationSizes sizes({20, 20});
  const auto kernels = params.kernels();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const auto r = hawkes::simulate_hawkes_general(kernels, rates, sizes, 2.0, seed++);
    benchmark::DoNotOptimize(r.log.events.data());
  }
}
BENCHMARK(BM_SimulateGeneral)->Unit(benchmark::kMillisecond);

void BM_EulerMaruyama(benchmark::State& state) {
  hawkes::DiffusionParams d;
  d.cascade = base_pair();
  d.sizes = hawkes::PopulationSizes({200, 200});
  d.dt = 1e-3;
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(hawkes::euler_maruyama_endpoint(d, 10.0, seed++));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_EulerMaruyama)->Unit(benchmark::kMillisecond);

}  // namespace
