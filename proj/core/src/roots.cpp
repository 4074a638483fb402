#include "hawkes/roots.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "hawkes/error.hpp"

namespace hawkes {
namespace {

// Parlett-Reinsch balancing with radix 2, in place.
void balance(Eigen::MatrixXd& a) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j != i) {
          c += std::abs(a(j, i));
          r += std::abs(a(i, j));
        }
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace

std::vector<double> poly_multiply(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coefficients) {
  if (coefficients.size() < 2 || coefficients.back() == 0.0) {
    throw InvalidArgument("polynomial_roots: need degree >= 1 with nonzero leading term");
  }
  const auto degree = static_cast<Eigen::Index>(coefficients.size() - 1);
  const double lead = coefficients.back();
  if (degree == 1) return {{-coefficients[0] / lead, 0.0}};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < degree; ++i) {
    companion(i, degree - 1) = -coefficients[static_cast<std::size_t>(i)] / lead;
  }
  balance(companion);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ComputationError("polynomial_roots: eigenvalue iteration failed");
  }
  const auto& ev = solver.eigenvalues();
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(degree));
  for (Eigen::Index i = 0; i < degree; ++i) roots[static_cast<std::size_t>(i)] = ev(i);
  return roots;
}

}  // namespace hawkes
