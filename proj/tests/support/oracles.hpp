#pragma once

// Independent reference computations used by the tests. Nothing here calls
// the library's own integrators or root finders.

#include <cmath>
#include <functional>
#include <vector>

#include "hawkes/cascade.hpp"
#include "hawkes/rate.hpp"

namespace oracle {

inline hawkes::CascadeParams base_pair() {
  using hawkes::RateFunction;
  return hawkes::CascadeParams({{3, 1.0, -1, RateFunction::paper_f1()},
                                {2, 1.0, +1, RateFunction::paper_f2()}});
}

inline hawkes::CascadeParams symmetric_pair(double nu, int eta) {
  using hawkes::RateFunction;
  return hawkes::CascadeParams({{eta, nu, -1, RateFunction::paper_f1()},
                                {eta, nu, +1, RateFunction::paper_f2()}});
}

// The paper's pair written out directly from its definition.
inline double f1(double x) {
  return x < std::log(20.0) ? 10.0 * std::exp(x) : 400.0 / (1.0 + 400.0 * std::exp(-2.0 * x));
}
inline double f2(double x) {
  return x < std::log(20.0) ? std::exp(x) : 40.0 / (1.0 + 400.0 * std::exp(-2.0 * x));
}

inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

// Adaptive Simpson quadrature.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 50);
}

// Cascade right-hand side written independently of the library.
inline std::vector<double> cascade_rhs(const hawkes::CascadeParams& p,
                                       const std::vector<double>& x) {
  std::vector<double> dx(x.size());
  std::size_t offset = 0;
  std::vector<std::size_t> starts;
  for (std::size_t k = 0; k < p.populations(); ++k) {
    starts.push_back(offset);
    offset += static_cast<std::size_t>(p.population(k).eta) + 1;
  }
  for (std::size_t k = 0; k < p.populations(); ++k) {
    const auto& pop = p.population(k);
    const std::size_t next = (k + 1) % p.populations();
    for (int l = 0; l <= pop.eta; ++l) {
      const std::size_t i = starts[k] + static_cast<std::size_t>(l);
      const double feed = l < pop.eta ? x[i + 1]
                                      : pop.sign * p.population(next).rate.eval(x[starts[next]]);
      dx[i] = -pop.nu * x[i] + feed;
    }
  }
  return dx;
}

// Classic RK4 on dx/dt = g(x) with a fixed step.
inline std::vector<double> rk4(const std::function<std::vector<double>(const std::vector<double>&)>& g,
                               std::vector<double> x, double t_end, double dt) {
  const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
  const double h = steps ? t_end / static_cast<double>(steps) : 0.0;
  auto axpy = [](const std::vector<double>& a, const std::vector<double>& b, double s) {
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  for (std::size_t s = 0; s < steps; ++s) {
    const auto k1 = g(x);
    const auto k2 = g(axpy(x, k1, h / 2));
    const auto k3 = g(axpy(x, k2, h / 2));
    const auto k4 = g(axpy(x, k3, h));
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
  }
  return x;
}

// Linear inter-jump flow dx^{k,l} = -nu x^{k,l} + x^{k,l+1} (no rate feed).
inline std::vector<double> linear_rhs(const hawkes::CascadeParams& p, const std::vector<double>& x) {
  std::vector<double> dx(x.size());
  std::size_t i = 0;
  for (std::size_t k = 0; k < p.populations(); ++k) {
    const auto& pop = p.population(k);
    for (int l = 0; l <= pop.eta; ++l, ++i) {
      dx[i] = -pop.nu * x[i] + (l < pop.eta ? x[i + 1] : 0.0);
    }
  }
  return dx;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace oracle
