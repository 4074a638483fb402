#include <doctest.h>

#include <cmath>
#include <limits>

#include "hawkes/error.hpp"
#include "hawkes/pdmp.hpp"
#include "hawkes/random.hpp"
#include "hawkes/stats.hpp"
#include "oracles.hpp"

using namespace hawkes;

namespace {

CascadeParams single_constant(double v) {
  return CascadeParams({{0, 1.0, 1, RateFunction::constant(v)}});
}

std::vector<double> random_state(CounterRng& rng, std::size_t kappa) {
  std::vector<double> x(kappa);
  for (auto& c : x) c = 4.0 * rng.uniform() - 2.0;
  return x;
}

double erlang_value(int eta, double nu, double t) {
  return std::exp(-nu * t) * std::pow(t, eta) / std::tgamma(eta + 1.0);
}

}  // namespace

TEST_CASE("population sizes") {
  const auto s = PopulationSizes::even(41, 2);
  CHECK(s[0] == 21);
  CHECK(s[1] == 20);
  CHECK(s.total() == 41);
  CHECK(s.fraction(1) == doctest::Approx(20.0 / 41.0));
  CHECK_THROWS_AS(PopulationSizes::even(1, 2), InvalidArgument);
  CHECK_THROWS_AS(PopulationSizes({0, 3}), InvalidArgument);
  CHECK_THROWS_AS(PopulationSizes(std::vector<std::uint64_t>{}), InvalidArgument);
}

TEST_CASE("pdmp_flow: identity at zero step and pure decay for eta = 0") {
  const auto p = oracle::base_pair();
  CounterRng rng(11);
  const auto x = random_state(rng, 7);
  CHECK(pdmp_flowed(p, x, 0.0) == x);

  const auto q = single_constant(1.0).with_nu(1.7);
  const auto y = pdmp_flowed(q, std::vector<double>{2.0}, 0.5);
  CHECK(y[0] == doctest::Approx(2.0 * std::exp(-0.85)).epsilon(1e-14));
  CHECK_THROWS_AS(pdmp_flowed(p, x, -1.0), InvalidArgument);
  CHECK_THROWS_AS(pdmp_flowed(p, std::vector<double>(3), 1.0), InvalidArgument);
}

TEST_CASE("pdmp_flow matches RK4 on the linear flow") {
  const CascadeParams p({{3, 0.8, -1, RateFunction::paper_f1()}, {5, 1.3, 1, RateFunction::paper_f2()}});
  CounterRng rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto x = random_state(rng, p.kappa());
    const double dt = 2.0 * rng.uniform();
    const auto exact = pdmp_flowed(p, x, dt);
    const auto ref = oracle::rk4([&](const std::vector<double>& s) { return oracle::linear_rhs(p, s); }, x,
                                 dt, 1e-3);
    CHECK(oracle::max_abs_diff(exact, ref) < 1e-8);
  }
}

TEST_CASE("pdmp_flow is a semigroup") {
  const auto p = oracle::base_pair();
  CounterRng rng(9);
  for (int i = 0; i < 50; ++i) {
    const auto x = random_state(rng, 7);
    const double a = rng.uniform(), b = 3.0 * rng.uniform();
    const auto two = pdmp_flowed(p, pdmp_flowed(p, x, a), b);
    const auto one = pdmp_flowed(p, x, a + b);
    CHECK(oracle::max_abs_diff(two, one) < 1e-12);
  }
}

TEST_CASE("a zero rate produces no events") {
  const CascadeParams p({{1, 1.0, -1, RateFunction::constant(0.0)}, {1, 1.0, 1, RateFunction::constant(0.0)}});
  const auto r = simulate_pdmp(p, PopulationSizes({10, 10}), 50.0, 1);
  CHECK(r.log.size() == 0);
  CHECK(r.final_state.x == CascadeState(4, 0.0));
}

TEST_CASE("constant rate: event counts are Poisson") {
  const double v = 2.5, horizon = 4.0;
  const std::size_t size = 10;
  const auto p = single_constant(v);
  std::vector<double> counts;
  for (std::uint64_t r = 0; r < 200; ++r) {
    counts.push_back(static_cast<double>(simulate_pdmp(p, PopulationSizes({size}), horizon, derive_seed(7, "poisson", r)).log.size()));
  }
  const auto s = stats::summarize(counts);
  const double expected = v * horizon * size;
  CHECK(std::abs(s.mean - expected) < 3.0 * std::sqrt(expected / 200.0));
  CHECK(s.variance == doctest::Approx(expected).epsilon(0.25));
}

TEST_CASE("simulate_pdmp is deterministic in the seed") {
  const auto p = oracle::base_pair();
  const PopulationSizes sizes({20, 20});
  SimulationOptions opt;
  opt.sample_dt = 0.5;
  const auto a = simulate_pdmp(p, sizes, 30.0, 42, opt);
  const auto b = simulate_pdmp(p, sizes, 30.0, 42, opt);
  const auto c = simulate_pdmp(p, sizes, 30.0, 43, opt);
  CHECK(a.log.events == b.log.events);
  CHECK(a.path.states == b.path.states);
  CHECK(a.log.events != c.log.events);
  CHECK_FALSE(a.log.events.empty());
  CHECK(a.path.size() == 61);
  for (std::size_t i = 1; i < a.log.size(); ++i) CHECK(a.log.events[i].time >= a.log.events[i - 1].time);
}

TEST_CASE("neurons within a population are exchangeable") {
  const auto p = oracle::base_pair();
  const PopulationSizes sizes({20, 20});
  std::vector<std::uint64_t> pooled0(20, 0), pooled1(20, 0);
  for (std::uint64_t r = 0; r < 40; ++r) {
    const auto res = simulate_pdmp(p, sizes, 20.0, derive_seed(3, "exch", r));
    const auto counts = res.log.neuron_counts(sizes, 20.0);
    for (std::size_t i = 0; i < 20; ++i) {
      pooled0[i] += counts[0][i];
      pooled1[i] += counts[1][i];
    }
  }
  CHECK(stats::chi_square_uniform(pooled0).p_value > 1e-3);
  CHECK(stats::chi_square_uniform(pooled1).p_value > 1e-3);
}

TEST_CASE("candidate inputs equal the kernel-weighted event history") {
  const auto p = oracle::base_pair();
  const PopulationSizes sizes({20, 20});
  SimulationOptions opt;
  opt.record_candidates = true;
  const auto res = simulate_pdmp(p, sizes, 15.0, 8, opt);
  REQUIRE(res.candidates.size() > 100);
  std::size_t checked = 0;
  for (const auto& c : res.candidates) {
    const std::size_t k = c.population, src = (k + 1) % 2;
    const auto& pop = p.population(k);
    double input = 0.0;
    for (const auto& e : res.log.events) {
      if (e.time >= c.time) break;
      if (e.population == src) input += pop.sign * erlang_value(pop.eta, pop.nu, c.time - e.time) / 20.0;
    }
    CHECK(c.input == doctest::Approx(input).epsilon(1e-9).scale(1.0));
    ++checked;
    if (checked > 2000) break;
  }
}

TEST_CASE("the Markovian simulator agrees with history-based thinning") {
  const auto p = oracle::base_pair();
  const PopulationSizes sizes({10, 10});
  const std::vector<RateFunction> rates{p.population(0).rate, p.population(1).rate};
  SimulationOptions opt;
  opt.record_candidates = true;
  const auto a = simulate_pdmp(p, sizes, 10.0, 77, opt);
  const auto b = simulate_hawkes_general(p.kernels(), rates, sizes, 10.0, 77, opt);
  REQUIRE(a.candidates.size() == b.candidates.size());
  CHECK(a.log.events == b.log.events);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    worst = std::max(worst, std::abs(a.candidates[i].input - b.candidates[i].input));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("re-flowing the state between recorded events reproduces the next event state") {
  const auto p = oracle::base_pair();
  const PopulationSizes sizes({20, 20});
  SimulationOptions opt;
  opt.record_event_states = true;
  const auto res = simulate_pdmp(p, sizes, 20.0, 4, opt);
  REQUIRE(res.event_states.size() == res.log.size());
  for (std::size_t i = 1; i < res.log.size(); ++i) {
    auto x = pdmp_flowed(p, res.event_states[i - 1], res.log.events[i].time - res.log.events[i - 1].time);
    const std::size_t k = res.log.events[i].population;
    const std::size_t receiver = (k + 1) % 2;
    x[p.top_index(receiver)] += p.population(receiver).sign / 20.0;
    CHECK(oracle::max_abs_diff(x, res.event_states[i]) < 1e-12);
  }
}

TEST_CASE("averaged counts approach the limit mean for large N") {
  const auto p = oracle::base_pair();
  const double horizon = 5.0;
  const auto limit = integrate(p, horizon);
  const auto res = simulate_pdmp(p, PopulationSizes({2000, 2000}), horizon, 12);
  for (std::size_t k = 0; k < 2; ++k) {
    const double m = limit.mean(limit.size() - 1, k);
    CHECK(res.final_state.zbar[k] == doctest::Approx(m).epsilon(0.05));
  }
}

TEST_CASE("unbounded rates are rejected") {
  const CascadeParams p({{0, 1.0, 1, RateFunction::constant(std::numeric_limits<double>::infinity())}});
  CHECK_THROWS_WITH_AS(simulate_pdmp(p, PopulationSizes({5}), 1.0, 1),
                       doctest::Contains("thinning requires bounded rates"), InvalidArgument);
  CHECK_THROWS_AS(simulate_pdmp(oracle::base_pair(), PopulationSizes({5}), 1.0, 1), InvalidArgument);
  CHECK_THROWS_AS(simulate_pdmp(oracle::base_pair(), PopulationSizes({5, 5}), -1.0, 1), InvalidArgument);
}

TEST_CASE("coupling") {
  const auto p = oracle::base_pair();
  const double horizon = 10.0;
  const auto limit = integrate(p, horizon);

  SUBCASE("limit intensity on both sides gives no discordance") {
    CouplingOptions opt;
    opt.limit_on_both_sides = true;
    const auto r = simulate_coupled(p, PopulationSizes({50, 50}), horizon, 2, limit, opt);
    CHECK(r.total_delta(horizon) == 0.0);
    CHECK(r.total_sup_gap() == 0.0);
  }
  SUBCASE("discordance counts are nondecreasing in time") {
    const auto r = simulate_coupled(p, PopulationSizes({10, 10}), horizon, 2, limit);
    double previous = 0.0;
    for (double t = 0.0; t <= horizon; t += 0.25) {
      const double d = r.total_delta(t);
      CHECK(d >= previous);
      previous = d;
    }
    CHECK(r.sup_gap[0] <= r.delta(0));
  }
  SUBCASE("discordance shrinks with N") {
    double small = 0.0, large = 0.0;
    for (std::uint64_t i = 0; i < 20; ++i) {
      small += simulate_coupled(p, PopulationSizes({10, 10}), horizon, derive_seed(1, "s", i), limit).total_delta(horizon);
      large += simulate_coupled(p, PopulationSizes({1000, 1000}), horizon, derive_seed(1, "l", i), limit).total_delta(horizon);
    }
    CHECK(large < small / 3.0);
  }
  SUBCASE("a short m-grid is rejected") {
    const auto short_limit = integrate(p, horizon / 2);
    CHECK_THROWS_WITH_AS(simulate_coupled(p, PopulationSizes({10, 10}), horizon, 1, short_limit),
                         doctest::Contains("m-grid shorter than horizon"), InvalidArgument);
  }
}
