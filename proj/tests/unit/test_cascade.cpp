#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hawkes/cascade.hpp"
#include "hawkes/error.hpp"
#include "hawkes/random.hpp"
#include "oracles.hpp"

using namespace hawkes;

namespace {

CascadeParams constant_pair(double v, int c1, int c2) {
  return CascadeParams({{0, 1.0, c1, RateFunction::constant(v)}, {0, 1.0, c2, RateFunction::constant(v)}});
}

double max_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("layout and kappa") {
  const auto p = oracle::base_pair();
  CHECK(p.kappa() == 7);
  CHECK(p.index(1, 0) == 4);
  CHECK(p.top_index(0) == 3);
  CHECK(p.top_index(1) == 6);
  CHECK(p.sign_product() == -1);
  CHECK(p.equal_nu());
}

TEST_CASE("vector_field") {
  const auto p = oracle::base_pair();
  const CascadeState zero(7, 0.0);
  const auto v = vector_field(p, zero);
  CHECK(v[3] == doctest::Approx(-1.0));
  CHECK(v[6] == doctest::Approx(10.0));
  for (std::size_t i : {0, 1, 2, 4, 5}) CHECK(v[i] == 0.0);
  const auto w = vector_field(p.with_nu(2.0), zero);
  CHECK(w[3] == v[3]);
  CHECK(w[6] == v[6]);
  CHECK_THROWS_AS(vector_field(p, CascadeState(6, 0.0)), InvalidArgument);

  CounterRng rng(3);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> x(7);
    for (auto& c : x) c = 6.0 * rng.uniform() - 3.0;
    const auto a = vector_field(p, x);
    const auto b = oracle::cascade_rhs(p, x);
    CHECK(oracle::max_abs_diff(a, b) < 1e-12);
  }
}

TEST_CASE("integrate: constant rates relax linearly") {
  const auto p = constant_pair(2.0, 1, 1);
  const auto traj = integrate(p, 30.0, 0.01);
  const auto last = traj.state(traj.size() - 1);
  CHECK(last[0] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(last[1] == doctest::Approx(2.0).epsilon(1e-9));
  // m_t = v t exactly for constant rates.
  CHECK(traj.mean(traj.size() - 1, 0) == doctest::Approx(60.0));
}

TEST_CASE("integrate: the base-pair trajectory oscillates about the equilibrium") {
  const auto p = oracle::base_pair();
  const auto traj = integrate(p, 200.0);
  const auto x = traj.component(0);
  const double equilibrium = find_equilibrium(p)[0];
  const auto late_begin = x.begin() + static_cast<std::ptrdiff_t>(x.size() / 2);
  CHECK(*std::min_element(late_begin, x.end()) < equilibrium);
  CHECK(*std::max_element(late_begin, x.end()) > equilibrium);
  CHECK(amplitude_ratio(x, 0.4) > 0.5);
}

TEST_CASE("integrate: means are nondecreasing and bounded by sup f * t") {
  const auto p = oracle::base_pair();
  const auto traj = integrate(p, 100.0);
  for (std::size_t k = 0; k < 2; ++k) {
    const double sup = p.population(k).rate.sup();
    CHECK(traj.mean(0, k) == 0.0);
    for (std::size_t i = 1; i < traj.size(); ++i) {
      CHECK(traj.mean(i, k) >= traj.mean(i - 1, k));
      CHECK(traj.mean(i, k) <= sup * traj.times[i] + 1e-12);
    }
  }
}

TEST_CASE("integrate: RK4 matches an independent RK4 and converges at fourth order") {
  const auto p = oracle::base_pair();
  const double t = 20.0;
  const auto a = integrate(p, t, 0.01);
  const auto ref = oracle::rk4([&](const std::vector<double>& x) { return oracle::cascade_rhs(p, x); },
                               std::vector<double>(7, 0.0), t, 0.01);
  const auto end_a = a.state(a.size() - 1);
  CHECK(oracle::max_abs_diff({end_a.begin(), end_a.end()}, ref) < 1e-10);

  const auto b = integrate(p, t, 0.005);
  const auto c = integrate(p, t, 0.0025);
  const auto eb = b.state(b.size() - 1), ec = c.state(c.size() - 1);
  double err_ab = 0.0, err_bc = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < 7; ++i) {
    err_ab = std::max(err_ab, std::abs(end_a[i] - eb[i]));
    err_bc = std::max(err_bc, std::abs(eb[i] - ec[i]));
    scale = std::max(scale, std::abs(ec[i]));
  }
  CHECK(err_ab / scale < 1e-6);
  // Step halving divides the error by ~16.
  CHECK(err_ab / err_bc > 12.0);
  CHECK(err_ab / err_bc < 20.0);
}

TEST_CASE("integrate rejects bad input") {
  const auto p = oracle::base_pair();
  CHECK_THROWS_AS(integrate(p, -1.0), InvalidArgument);
  CHECK_THROWS_AS(integrate(p, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("find_equilibrium") {
  const auto p = oracle::base_pair();
  const auto x = find_equilibrium(p);
  for (std::size_t l = 0; l < 4; ++l) CHECK(x[l] == doctest::Approx(-2.424).epsilon(0.001 / 2.424));
  for (std::size_t l = 4; l < 7; ++l) CHECK(x[l] == doctest::Approx(0.885).epsilon(0.001 / 0.885));
  CHECK(max_norm(vector_field(p, x)) < 1e-9);

  const auto c = find_equilibrium(constant_pair(1.5, -1, 1));
  CHECK(c[0] == doctest::Approx(-1.5));
  CHECK(c[1] == doctest::Approx(1.5));

  CHECK_THROWS_WITH_AS(find_equilibrium(constant_pair(1.0, 1, 1)),
                       doctest::Contains("positive feedback: uniqueness not guaranteed"), InvalidArgument);

  for (double nu : {0.4, 0.8, 1.7}) {
    const auto q = oracle::symmetric_pair(nu, 3);
    CHECK(max_norm(vector_field(q, find_equilibrium(q))) < 1e-9);
  }
}

TEST_CASE("compute_rho") {
  const auto p = oracle::base_pair();
  const auto x = find_equilibrium(p);
  const double rho = compute_rho(p, x);
  CHECK(rho == doctest::Approx(-2.15).epsilon(0.01 / 2.15));
  // Independent: product of c_k f_k'(x^{k,0}), both on the exponential branch.
  CHECK(rho == doctest::Approx(-(10.0 * std::exp(x[0])) * std::exp(x[4])).epsilon(1e-12));
  CHECK(compute_rho(constant_pair(1.0, -1, 1), CascadeState{-1.0, 1.0}) == 0.0);
}

TEST_CASE("characteristic roots") {
  SUBCASE("kappa = 2 closed form") {
    const CascadeParams p({{0, 1.3, -1, RateFunction::paper_f1()}, {0, 1.3, 1, RateFunction::paper_f2()}});
    const auto roots = characteristic_roots(p, -2.0);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].real() == doctest::Approx(-1.3));
    CHECK(roots[0].imag() == doctest::Approx(std::sqrt(2.0)));
    CHECK(roots[1].imag() == doctest::Approx(-std::sqrt(2.0)));
  }
  SUBCASE("kappa = 7, rho = -2.15") {
    const auto p = oracle::base_pair();
    const auto roots = characteristic_roots(p, -2.15);
    const double expected = -1.0 + std::pow(2.15, 1.0 / 7.0) * std::cos(std::numbers::pi / 7.0);
    CHECK(roots[0].real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(roots[0].real() == doctest::Approx(0.0052).epsilon(0.05));
  }
  SUBCASE("closed form and companion matrix agree") {
    for (int eta : {1, 2, 3, 5, 8}) {
      for (double rho : {-0.3, -2.15, -9.0, 0.7}) {
        const auto p = oracle::symmetric_pair(0.9, eta);
        auto a = characteristic_roots_closed_form(p, rho);
        auto b = characteristic_roots_companion(p, rho);
        REQUIRE(a.size() == b.size());
        for (const auto& z : a) {
          double best = 1e9;
          for (const auto& w : b) best = std::min(best, std::abs(z - w));
          CHECK(best < 1e-9);
        }
      }
    }
  }
  SUBCASE("general nu: residual, conjugate closure and trace identity") {
    const CascadeParams p({{3, 0.7, -1, RateFunction::paper_f1()}, {2, 1.4, 1, RateFunction::paper_f2()},
                           {1, 1.1, 1, RateFunction::paper_f2()}});
    const double rho = -3.1;
    const auto roots = characteristic_roots(p, rho);
    REQUIRE(roots.size() == p.kappa());
    std::complex<double> sum = 0.0;
    for (const auto& z : roots) {
      CHECK(characteristic_residual(p, rho, z) < 1e-8);
      double best = 1e9;
      for (const auto& w : roots) best = std::min(best, std::abs(std::conj(z) - w));
      CHECK(best < 1e-9);
      sum += z;
    }
    CHECK(sum.real() == doctest::Approx(-(4 * 0.7 + 3 * 1.4 + 2 * 1.1)).epsilon(1e-10));
    CHECK(std::abs(sum.imag()) < 1e-8);
    for (std::size_t i = 1; i < roots.size(); ++i) CHECK(roots[i - 1].real() >= roots[i].real());
  }
}

TEST_CASE("characteristic polynomial expansion") {
  const CascadeParams p({{1, 2.0, -1, RateFunction::paper_f1()}, {0, 3.0, 1, RateFunction::paper_f2()}});
  // (2 + l)^2 (3 + l) - rho = l^3 + 7 l^2 + 16 l + 12 - rho
  const auto c = characteristic_polynomial(p, 5.0);
  REQUIRE(c.size() == 4);
  CHECK(c[0] == doctest::Approx(7.0));
  CHECK(c[1] == doctest::Approx(16.0));
  CHECK(c[2] == doctest::Approx(7.0));
  CHECK(c[3] == doctest::Approx(1.0));
}

TEST_CASE("check_oscillation on the base pair") {
  const auto r = check_oscillation(oracle::base_pair());
  CHECK(r.rho == doctest::Approx(-2.15).epsilon(0.01 / 2.15));
  REQUIRE(r.threshold.has_value());
  CHECK(*r.threshold == doctest::Approx(2.08).epsilon(0.01 / 2.08));
  CHECK(*r.threshold == doctest::Approx(1.0 / std::pow(std::cos(std::numbers::pi / 7.0), 7)).epsilon(1e-12));
  CHECK(r.unstable2.value());
  CHECK(r.oscillatory);
  CHECK(r.unstable_roots == 2);
  REQUIRE(r.period.has_value());
  CHECK(*r.period == doctest::Approx(12.98).epsilon(0.01 / 12.98));
}

TEST_CASE("check_oscillation: large nu is stable, general nu omits the period") {
  const auto r = check_oscillation(oracle::base_pair().with_nu(50.0));
  CHECK_FALSE(r.oscillatory);
  CHECK_FALSE(r.unstable2.value());
  const CascadeParams g({{3, 0.9, -1, RateFunction::paper_f1()}, {2, 1.1, 1, RateFunction::paper_f2()}});
  const auto s = check_oscillation(g);
  CHECK_FALSE(s.period.has_value());
  CHECK_FALSE(s.unstable2.has_value());
}

TEST_CASE("unstable2 implies at least two unstable roots on every scan point") {
  for (int eta = 1; eta <= 8; ++eta) {
    for (double nu = 0.3; nu <= 2.0; nu += 0.05) {
      const auto r = check_oscillation(oracle::symmetric_pair(nu, eta));
      if (r.unstable2.value_or(false)) CHECK(r.unstable_roots >= 2);
    }
  }
}

TEST_CASE("hopf_scan") {
  const auto templ = oracle::symmetric_pair(1.0, 3);
  const auto scan = hopf_scan(templ, 0.5, 1.6, 0.01);
  CHECK(scan.points.size() == 2);
  for (const auto& pt : scan.points) {
    const auto r = check_oscillation(templ.with_nu(pt.nu));
    CHECK(std::abs(r.max_real) < 1e-6);
  }
  // Independent brute-force sign-change location on a fine grid.
  double previous = check_oscillation(templ.with_nu(0.5)).max_real;
  std::vector<double> crossings;
  for (double nu = 0.5005; nu <= 1.6; nu += 0.0005) {
    const double cur = check_oscillation(templ.with_nu(nu)).max_real;
    if ((cur > 0) != (previous > 0)) crossings.push_back(nu);
    previous = cur;
  }
  REQUIRE(crossings.size() == scan.points.size());
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    CHECK(std::abs(crossings[i] - scan.points[i].nu) < 0.001);
  }
  CHECK(scan.points[0].onset);
  CHECK_FALSE(scan.points[1].onset);

  const auto above = hopf_scan(templ, scan.points[1].nu + 0.05, 3.0, 0.02);
  CHECK(above.points.empty());
}

TEST_CASE("kappa_scan") {
  const auto templ = oracle::symmetric_pair(0.8, 1);
  const int kappas[] = {4, 8, 12};
  const auto v = kappa_scan(templ, kappas);
  REQUIRE(v.size() == 3);
  CHECK(v[0].eta == 1);
  CHECK(v[1].eta == 3);
  for (const auto& c : v) {
    CHECK(c.unstable2 == (std::abs(c.rho) > c.threshold));
    if (c.unstable2) CHECK(c.unstable_roots >= 2);
  }
  CHECK_FALSE(v[0].unstable2);
  // The equilibrium depends on the memory order when nu != 1.
  CHECK(v[0].equilibrium[0] != doctest::Approx(v[1].equilibrium[0]));
  const int odd[] = {5};
  CHECK_THROWS_AS(kappa_scan(templ, odd), InvalidArgument);
}

TEST_CASE("measure_period") {
  const double period = 7.3;
  std::vector<double> t, s;
  for (int i = 0; i <= 20000; ++i) {
    t.push_back(i * period / 1000.0);
    s.push_back(std::sin(2.0 * std::numbers::pi * t.back() / period));
  }
  CHECK(measure_period(t, s) == doctest::Approx(period).epsilon(1e-3));

  const auto damped = integrate(oracle::symmetric_pair(0.8, 1), 400.0);
  CHECK_THROWS_WITH_AS(measure_period(damped, 0), doctest::Contains("no sustained oscillation"),
                       ComputationError);

  const auto base = integrate(oracle::base_pair(), 200.0);
  CHECK(measure_period(base, 0) == doctest::Approx(12.98).epsilon(0.1));
}
