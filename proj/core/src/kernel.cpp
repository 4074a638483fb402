#include "hawkes/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hawkes/error.hpp"

namespace hawkes {
namespace {

constexpr double kRadiusTolerance = 1e-12;
constexpr int kRadiusMaxIterations = 100000;
constexpr double kCriticalBand = 1e-9;
constexpr double kAlphaTolerance = 1e-10;
constexpr double kAlphaLow = 1e-9;

Matrix laplace_matrix(const KernelMatrix& kernels, std::span<const double> lipschitz,
                      double alpha) {
  const std::size_t n = kernels.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (const auto& h = kernels.at(i, j)) m(i, j) = lipschitz[j] * erlang_abs_laplace(*h, alpha);
    }
  }
  return m;
}

void check_lipschitz(const KernelMatrix& kernels, std::span<const double> lipschitz) {
  if (lipschitz.size() != kernels.size()) {
    throw InvalidArgument("need one Lipschitz constant per population");
  }
  for (double l : lipschitz) {
    if (!(l >= 0.0)) throw InvalidArgument("Lipschitz constants must be >= 0");
  }
}

}  // namespace

void ErlangKernel::validate() const {
  if (sign != 1 && sign != -1) throw InvalidArgument("kernel sign must be -1 or +1");
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw InvalidArgument("nu must be strictly positive");
  }
  if (order < 0) throw InvalidArgument("eta must be a nonnegative integer");
}

double erlang_eval(const ErlangKernel& kernel, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("erlang_eval: negative time");
  if (kernel.order == 0) return kernel.sign * std::exp(-kernel.rate * t);
  if (t == 0.0) return 0.0;
  const double log_mag = -kernel.rate * t + kernel.order * std::log(t) -
                         std::lgamma(static_cast<double>(kernel.order) + 1.0);
  return kernel.sign * std::exp(log_mag);
}

double erlang_l1_norm(const ErlangKernel& kernel) {
  return std::pow(kernel.rate, -static_cast<double>(kernel.order + 1));
}

double erlang_abs_laplace(const ErlangKernel& kernel, double alpha) {
  return std::pow(kernel.rate + alpha, -static_cast<double>(kernel.order + 1));
}

KernelMatrix::KernelMatrix(std::size_t populations)
    : n_(populations), entries_(populations * populations) {
  if (populations == 0) throw InvalidArgument("kernel matrix needs at least one population");
}

KernelMatrix KernelMatrix::cyclic(std::span<const ErlangKernel> kernels) {
  KernelMatrix m(kernels.size());
  for (std::size_t k = 0; k < kernels.size(); ++k) m.set(k, (k + 1) % kernels.size(), kernels[k]);
  return m;
}

void KernelMatrix::set(std::size_t k, std::size_t l, const ErlangKernel& kernel) {
  kernel.validate();
  entries_[k * n_ + l] = kernel;
}

bool KernelMatrix::is_cyclic() const {
  for (std::size_t k = 0; k < n_; ++k) {
    for (std::size_t l = 0; l < n_; ++l) {
      if (at(k, l) && l != (k + 1) % n_) return false;
    }
  }
  return true;
}

Matrix offspring_matrix(const KernelMatrix& kernels, std::span<const double> lipschitz) {
  check_lipschitz(kernels, lipschitz);
  const std::size_t n = kernels.size();
  Matrix lambda(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (const auto& h = kernels.at(i, j)) lambda(i, j) = lipschitz[j] * erlang_l1_norm(*h);
    }
  }
  return lambda;
}

double spectral_radius(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0 || m.cols() != n) throw InvalidArgument("spectral_radius: matrix must be square");
  for (double v : m.data()) {
    if (!(v >= 0.0)) throw InvalidArgument("spectral_radius: matrix must be nonnegative");
  }
  if (n == 1) return m(0, 0);
  if (n == 2 && m(0, 0) == 0.0 && m(1, 1) == 0.0) return std::sqrt(m(0, 1) * m(1, 0));

  std::vector<double> v(n, 1.0);
  std::vector<double> w(n);
  double previous = -1.0;
  int settled = 0;
  for (int it = 0; it < kRadiusMaxIterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = v[i];
      for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * v[j];
      w[i] = acc;
    }
    const double estimate = *std::max_element(w.begin(), w.end());
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / estimate;
    if (std::abs(estimate - previous) <= kRadiusTolerance * estimate) {
      if (++settled >= 2) return estimate - 1.0;
    } else {
      settled = 0;
    }
    previous = estimate;
  }
  throw ComputationError("spectral_radius: power iteration did not converge");
}

const char* to_string(Criticality c) {
  switch (c) {
    case Criticality::subcritical:
      return "subcritical";
    case Criticality::supercritical:
      return "supercritical";
    case Criticality::critical_boundary:
      return "critical-boundary";
  }
  return "unknown";
}

double compute_alpha0(const KernelMatrix& kernels, std::span<const double> lipschitz) {
  check_lipschitz(kernels, lipschitz);
  const double mu = spectral_radius(offspring_matrix(kernels, lipschitz));
  if (!(mu > 1.0 + kCriticalBand)) {
    throw InvalidArgument("compute_alpha0: not supercritical (spectral radius " +
                          std::to_string(mu) + ")");
  }
  auto radius_at = [&](double alpha) {
    return spectral_radius(laplace_matrix(kernels, lipschitz, alpha));
  };

  double lo = kAlphaLow;
  double hi = 1.0;
  while (radius_at(hi) >= 1.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw ComputationError("compute_alpha0: could not bracket the root");
  }
  // Radius is continuous and strictly decreasing in alpha.
  while (hi - lo > kAlphaTolerance * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    if (radius_at(mid) >= 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

CriticalityReport classify_criticality(const KernelMatrix& kernels,
                                       std::span<const double> lipschitz) {
  CriticalityReport report;
  report.offspring = offspring_matrix(kernels, lipschitz);
  report.radius = spectral_radius(report.offspring);
  if (std::abs(report.radius - 1.0) < kCriticalBand) {
    report.regime = Criticality::critical_boundary;
  } else if (report.radius > 1.0) {
    report.regime = Criticality::supercritical;
    report.alpha0 = compute_alpha0(kernels, lipschitz);
  } else {
    report.regime = Criticality::subcritical;
  }
  return report;
}

}  // namespace hawkes
