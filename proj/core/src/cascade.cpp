#include "hawkes/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "hawkes/error.hpp"
#include "hawkes/roots.hpp"

namespace hawkes {
namespace {

constexpr double kRootResidual = 1e-8;
constexpr double kHopfTolerance = 1e-10;

void require_length(const CascadeParams& params, std::size_t length) {
  if (length != params.kappa()) {
    throw InvalidArgument("state has length " + std::to_string(length) + ", expected kappa = " +
                          std::to_string(params.kappa()));
  }
}

// Fills x^{k,0..eta_k-1} from x^{k,eta_k} using the equilibrium relation
// x^{k,l} = x^{k,l+1} / nu_k.
void fill_block_down(const CascadeParams& params, std::size_t k, CascadeState& x) {
  const auto& p = params.population(k);
  for (int l = p.eta - 1; l >= 0; --l) {
    x[params.index(k, l)] = x[params.index(k, l + 1)] / p.nu;
  }
}

// Given y = x^{n-1,eta}, back-fills every coordinate and returns the image
// of y under the cyclic composition (the value the last top coordinate
// would need to take for a fixed point).
double backfill(const CascadeParams& params, double y, CascadeState& x) {
  const std::size_t n = params.populations();
  x[params.top_index(n - 1)] = y;
  fill_block_down(params, n - 1, x);
  for (std::size_t kk = n - 1; kk-- > 0;) {
    const auto& p = params.population(kk);
    const double drive = params.population(kk + 1).rate(x[params.output_index(kk + 1)]);
    x[params.top_index(kk)] = p.sign * drive / p.nu;
    fill_block_down(params, kk, x);
  }
  const auto& last = params.population(n - 1);
  return last.sign * params.population(0).rate(x[params.output_index(0)]) / last.nu;
}

// Snaps near-real roots onto the axis and makes complex roots exact
// conjugate pairs, so sorting keeps pairs adjacent.
Roots symmetrize(Roots roots, double scale) {
  const double tol = 1e-10 * std::max(1.0, scale);
  Roots upper;
  Roots real;
  std::size_t lower = 0;
  for (const auto& r : roots) {
    if (std::abs(r.imag()) <= tol) {
      real.emplace_back(r.real(), 0.0);
    } else if (r.imag() > 0.0) {
      upper.push_back(r);
    } else {
      ++lower;
    }
  }
  if (lower != upper.size()) return roots;
  Roots out = real;
  for (const auto& r : upper) {
    out.push_back(r);
    out.push_back(std::conj(r));
  }
  return out;
}

void sort_roots(Roots& roots) {
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

std::complex<double> characteristic_product(const CascadeParams& params,
                                            std::complex<double> lambda) {
  std::complex<double> prod = 1.0;
  for (const auto& p : params.all()) prod *= std::pow(p.nu + lambda, p.eta + 1);
  return prod;
}

}  // namespace

CascadeParams::CascadeParams(std::vector<Population> populations)
    : pops_(std::move(populations)) {
  if (pops_.empty()) throw InvalidArgument("need at least one population");
  offsets_.reserve(pops_.size());
  for (const auto& p : pops_) {
    ErlangKernel{p.sign, p.nu, p.eta}.validate();
    offsets_.push_back(kappa_);
    kappa_ += static_cast<std::size_t>(p.eta) + 1;
  }
}

int CascadeParams::sign_product() const {
  int s = 1;
  for (const auto& p : pops_) s *= p.sign;
  return s;
}

bool CascadeParams::equal_nu() const {
  return std::all_of(pops_.begin(), pops_.end(),
                     [&](const Population& p) { return p.nu == pops_.front().nu; });
}

double CascadeParams::max_nu() const {
  double m = 0.0;
  for (const auto& p : pops_) m = std::max(m, p.nu);
  return m;
}

CascadeParams CascadeParams::with_nu(double nu) const {
  auto pops = pops_;
  for (auto& p : pops) p.nu = nu;
  return CascadeParams(std::move(pops));
}

CascadeParams CascadeParams::with_eta(int eta) const {
  auto pops = pops_;
  for (auto& p : pops) p.eta = eta;
  return CascadeParams(std::move(pops));
}

KernelMatrix CascadeParams::kernels() const {
  std::vector<ErlangKernel> ks;
  ks.reserve(pops_.size());
  for (const auto& p : pops_) ks.push_back({p.sign, p.nu, p.eta});
  return KernelMatrix::cyclic(ks);
}

std::vector<double> CascadeParams::lipschitz() const {
  std::vector<double> out;
  for (const auto& p : pops_) out.push_back(p.rate.lipschitz());
  return out;
}

void vector_field(const CascadeParams& params, std::span<const double> state,
                  std::span<double> out) {
  require_length(params, state.size());
  require_length(params, out.size());
  for (std::size_t k = 0; k < params.populations(); ++k) {
    const auto& p = params.population(k);
    const std::size_t base = params.index(k, 0);
    const auto eta = static_cast<std::size_t>(p.eta);
    for (std::size_t l = 0; l < eta; ++l) {
      out[base + l] = -p.nu * state[base + l] + state[base + l + 1];
    }
    const std::size_t next = params.successor(k);
    const double drive = params.population(next).rate(state[params.output_index(next)]);
    out[base + eta] = -p.nu * state[base + eta] + p.sign * drive;
  }
}

CascadeState vector_field(const CascadeParams& params, std::span<const double> state) {
  CascadeState out(params.kappa());
  vector_field(params, state, out);
  return out;
}

std::vector<double> LimitTrajectory::component(std::size_t c) const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = states[i * kappa + c];
  return out;
}

double LimitTrajectory::interpolate(std::size_t c, double t) const {
  if (times.empty()) throw InvalidArgument("interpolate: empty trajectory");
  if (t <= times.front()) return states[c];
  if (t >= times.back()) {
    if (t > times.back() * (1.0 + 1e-12)) {
      throw InvalidArgument("interpolate: time beyond trajectory grid");
    }
    return states[(size() - 1) * kappa + c];
  }
  const double h = times[1] - times[0];
  auto i = static_cast<std::size_t>((t - times.front()) / h);
  i = std::min(i, size() - 2);
  const double w = (t - times[i]) / (times[i + 1] - times[i]);
  return (1.0 - w) * states[i * kappa + c] + w * states[(i + 1) * kappa + c];
}

double default_dt(const CascadeParams& params) {
  return std::min(0.01, 0.05 / params.max_nu());
}

LimitTrajectory integrate(const CascadeParams& params, double t_end, std::optional<double> dt,
                          std::span<const double> initial) {
  const double step_hint = dt.value_or(default_dt(params));
  if (!(step_hint > 0.0)) throw InvalidArgument("integrate: dt must be > 0");
  if (!(t_end > 0.0)) throw InvalidArgument("integrate: t_end must be > 0");
  if (!initial.empty()) require_length(params, initial.size());

  const std::size_t kappa = params.kappa();
  const std::size_t n = params.populations();
  const std::size_t dim = kappa + n;
  const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(t_end / step_hint)));
  const double h = t_end / static_cast<double>(steps);

  LimitTrajectory traj;
  traj.kappa = kappa;
  traj.populations = n;
  traj.times.reserve(steps + 1);
  traj.states.reserve((steps + 1) * kappa);
  traj.means.reserve((steps + 1) * n);

  // Augmented state: cascade coordinates followed by the cumulative means.
  std::vector<double> y(dim, 0.0);
  if (!initial.empty()) std::copy(initial.begin(), initial.end(), y.begin());
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  auto rhs = [&](const std::vector<double>& in, std::vector<double>& out) {
    vector_field(params, std::span(in).first(kappa), std::span(out).first(kappa));
    for (std::size_t k = 0; k < n; ++k) {
      out[kappa + k] = params.population(k).rate(in[params.output_index(k)]);
    }
  };
  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.states.insert(traj.states.end(), y.begin(), y.begin() + static_cast<std::ptrdiff_t>(kappa));
    traj.means.insert(traj.means.end(), y.begin() + static_cast<std::ptrdiff_t>(kappa), y.end());
  };

  record(0.0);
  for (std::size_t s = 1; s <= steps; ++s) {
    rhs(y, k1);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    rhs(tmp, k2);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    rhs(tmp, k3);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + h * k3[i];
    rhs(tmp, k4);
    for (std::size_t i = 0; i < dim; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(y[i])) {
        throw ComputationError("integrate: non-finite state at t = " +
                               std::to_string(static_cast<double>(s) * h) + ", component " +
                               std::to_string(i));
      }
    }
    record(static_cast<double>(s) * h);
  }
  return traj;
}

CascadeState find_equilibrium(const CascadeParams& params) {
  if (params.sign_product() > 0) {
    throw InvalidArgument("positive feedback: uniqueness not guaranteed");
  }
  CascadeState x(params.kappa(), 0.0);
  // y - G(y) is strictly increasing because G is a decreasing composition.
  auto excess = [&](double y) { return y - backfill(params, y, x); };

  double bound = 1.0;
  while (excess(-bound) > 0.0 || excess(bound) < 0.0) {
    bound *= 2.0;
    if (bound > 1e300) throw ComputationError("find_equilibrium: could not bracket");
  }
  double lo = -bound;
  double hi = bound;
  while (hi - lo > 1e-12 * std::max(1.0, std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (excess(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double y = 0.5 * (lo + hi);
  backfill(params, y, x);
  return x;
}

double compute_rho(const CascadeParams& params, std::span<const double> equilibrium) {
  require_length(params, equilibrium.size());
  double rho = 1.0;
  for (std::size_t k = 0; k < params.populations(); ++k) {
    const auto& p = params.population(k);
    rho *= p.sign * p.rate.derivative(equilibrium[params.output_index(k)]);
  }
  return rho;
}

std::vector<double> characteristic_polynomial(const CascadeParams& params, double rho) {
  std::vector<std::size_t> order(params.populations());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return params.population(a).nu < params.population(b).nu;
  });
  std::vector<double> poly{1.0};
  for (std::size_t k : order) {
    const auto& p = params.population(k);
    const std::vector<double> factor{p.nu, 1.0};
    for (int j = 0; j <= p.eta; ++j) poly = poly_multiply(poly, factor);
  }
  poly[0] -= rho;
  return poly;
}

Roots characteristic_roots_closed_form(const CascadeParams& params, double rho) {
  if (!params.equal_nu()) {
    throw InvalidArgument("closed-form roots require equal nu across populations");
  }
  const double nu = params.population(0).nu;
  const auto kappa = static_cast<int>(params.kappa());
  const double radius = std::pow(std::abs(rho), 1.0 / kappa);
  constexpr double pi = std::numbers::pi;
  Roots roots;
  roots.reserve(params.kappa());
  auto push_pair = [&](double theta) {
    const double re = -nu + radius * std::cos(theta);
    const double im = radius * std::sin(theta);
    roots.emplace_back(re, im);
    roots.emplace_back(re, -im);
  };
  if (rho < 0.0) {
    // w = e^{i(2j-1)pi/kappa}
    for (int j = 1; 2 * j <= kappa; ++j) push_pair((2.0 * j - 1.0) * pi / kappa);
    if (kappa % 2 == 1) roots.emplace_back(-nu - radius, 0.0);
  } else {
    // w = e^{i 2 j pi/kappa}
    roots.emplace_back(-nu + radius, 0.0);
    for (int j = 1; 2 * j < kappa; ++j) push_pair(2.0 * j * pi / kappa);
    if (kappa % 2 == 0) roots.emplace_back(-nu - radius, 0.0);
  }
  sort_roots(roots);
  return roots;
}

double characteristic_residual(const CascadeParams& params, double rho,
                               std::complex<double> lambda) {
  return std::abs(characteristic_product(params, lambda) - rho);
}

Roots characteristic_roots_companion(const CascadeParams& params, double rho) {
  const auto poly = characteristic_polynomial(params, rho);
  Roots roots = polynomial_roots(poly);
  for (auto& r : roots) {
    // Newton on the product form, which is better conditioned than the
    // expanded coefficients.
    for (int it = 0; it < 4; ++it) {
      const auto prod = characteristic_product(params, r);
      std::complex<double> log_deriv = 0.0;
      for (const auto& p : params.all()) log_deriv += static_cast<double>(p.eta + 1) / (p.nu + r);
      const auto deriv = prod * log_deriv;
      if (std::abs(deriv) == 0.0) break;
      const auto candidate = r - (prod - rho) / deriv;
      if (characteristic_residual(params, rho, candidate) <
          characteristic_residual(params, rho, r)) {
        r = candidate;
      } else {
        break;
      }
    }
  }
  roots = symmetrize(std::move(roots), params.max_nu() + std::abs(rho));
  sort_roots(roots);
  return roots;
}

Roots characteristic_roots(const CascadeParams& params, double rho) {
  Roots roots = params.equal_nu() ? characteristic_roots_closed_form(params, rho)
                                  : characteristic_roots_companion(params, rho);
  const double scale = std::max(1.0, std::abs(rho));
  for (const auto& r : roots) {
    const double res = characteristic_residual(params, rho, r);
    if (!(res <= kRootResidual * scale)) {
      throw ComputationError("characteristic_roots: residual " + std::to_string(res) +
                             " exceeds tolerance");
    }
  }
  return roots;
}

StabilityReport check_oscillation(const CascadeParams& params) {
  StabilityReport report;
  report.equilibrium = find_equilibrium(params);
  report.rho = compute_rho(params, report.equilibrium);
  report.roots = characteristic_roots(params, report.rho);
  report.unstable_roots = static_cast<int>(
      std::count_if(report.roots.begin(), report.roots.end(), [](auto r) { return r.real() > 0.0; }));
  report.max_real = report.roots.front().real();
  report.oscillatory = report.unstable_roots >= 2;
  if (params.equal_nu()) {
    const double kappa = static_cast<double>(params.kappa());
    const double nu = params.population(0).nu;
    constexpr double pi = std::numbers::pi;
    if (params.kappa() >= 3) {
      report.threshold = std::pow(nu / std::cos(pi / kappa), kappa);
      report.unstable2 = std::abs(report.rho) > *report.threshold;
    }
    const double omega = std::pow(std::abs(report.rho), 1.0 / kappa) * std::sin(pi / kappa);
    if (omega > 0.0) {
      report.omega = omega;
      report.period = 2.0 * pi / omega;
    }
  }
  return report;
}

HopfScan hopf_scan(const CascadeParams& templ, double nu_min, double nu_max, double step) {
  if (!(nu_min > 0.0) || !(nu_max > nu_min) || !(step > 0.0)) {
    throw InvalidArgument("hopf_scan: need 0 < nu_min < nu_max and step > 0");
  }
  auto evaluate = [&](double nu) { return check_oscillation(templ.with_nu(nu)); };

  HopfScan scan;
  const auto count = static_cast<std::size_t>(std::floor((nu_max - nu_min) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const double nu = std::min(nu_min + static_cast<double>(i) * step, nu_max);
    const auto report = evaluate(nu);
    scan.samples.push_back({nu, report.max_real, report.oscillatory, report.rho, report.period});
  }
  for (std::size_t i = 1; i < scan.samples.size(); ++i) {
    const auto& a = scan.samples[i - 1];
    const auto& b = scan.samples[i];
    if ((a.max_real > 0.0) == (b.max_real > 0.0)) continue;
    double lo = a.parameter;
    double hi = b.parameter;
    const bool lo_positive = a.max_real > 0.0;
    while (hi - lo > kHopfTolerance) {
      const double mid = 0.5 * (lo + hi);
      if ((evaluate(mid).max_real > 0.0) == lo_positive) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    scan.points.push_back({0.5 * (lo + hi), !lo_positive});
  }
  return scan;
}

std::vector<KappaVerdict> kappa_scan(const CascadeParams& templ, std::span<const int> kappas) {
  const auto n = static_cast<int>(templ.populations());
  std::vector<KappaVerdict> out;
  for (int kappa : kappas) {
    if (kappa < n || kappa % n != 0) {
      throw InvalidArgument("kappa_scan: kappa = " + std::to_string(kappa) +
                            " is not a multiple of the population count " + std::to_string(n) +
                            " (symmetric template needs kappa = n(1+eta))");
    }
    const int eta = kappa / n - 1;
    const auto report = check_oscillation(templ.with_eta(eta));
    KappaVerdict v;
    v.kappa = static_cast<std::size_t>(kappa);
    v.eta = eta;
    v.equilibrium = report.equilibrium;
    v.rho = report.rho;
    v.threshold = report.threshold.value_or(std::numeric_limits<double>::infinity());
    v.unstable2 = report.unstable2.value_or(false);
    v.unstable_roots = report.unstable_roots;
    v.max_real = report.max_real;
    v.period = report.period;
    out.push_back(std::move(v));
  }
  return out;
}

double peak_to_peak(std::span<const double> series, std::size_t begin, std::size_t end) {
  if (begin >= end || end > series.size()) return 0.0;
  const auto [mn, mx] = std::minmax_element(series.begin() + static_cast<std::ptrdiff_t>(begin),
                                            series.begin() + static_cast<std::ptrdiff_t>(end));
  return *mx - *mn;
}

double amplitude_ratio(std::span<const double> series, double transient_fraction) {
  const std::size_t n = series.size();
  const auto cut = static_cast<std::size_t>(transient_fraction * static_cast<double>(n));
  const std::size_t window = (n - cut) / 5;
  if (window < 2) throw InvalidArgument("amplitude_ratio: series too short");
  const double early = peak_to_peak(series, cut, cut + window);
  const double late = peak_to_peak(series, n - window, n);
  if (!(early > 0.0)) return 0.0;
  return late / early;
}

double measure_period(std::span<const double> times, std::span<const double> series,
                      double transient_fraction) {
  if (times.size() != series.size()) throw InvalidArgument("measure_period: size mismatch");
  if (!(transient_fraction >= 0.0 && transient_fraction < 1.0)) {
    throw InvalidArgument("measure_period: transient fraction must lie in [0, 1)");
  }
  const std::size_t n = series.size();
  const auto cut = static_cast<std::size_t>(transient_fraction * static_cast<double>(n));
  if (n - cut < 10) throw InvalidArgument("measure_period: trajectory too short");

  const double mean =
      std::accumulate(series.begin() + static_cast<std::ptrdiff_t>(cut), series.end(), 0.0) /
      static_cast<double>(n - cut);
  const double hysteresis = 0.05 * 0.5 * peak_to_peak(series, cut, n);

  std::vector<double> crossings;
  bool armed = false;
  for (std::size_t i = cut + 1; i < n; ++i) {
    const double prev = series[i - 1] - mean;
    const double cur = series[i] - mean;
    if (cur < -hysteresis) armed = true;
    if (armed && prev < 0.0 && cur >= 0.0) {
      const double w = -prev / (cur - prev);
      crossings.push_back(times[i - 1] + w * (times[i] - times[i - 1]));
      armed = false;
    }
  }
  if (crossings.size() < 5 || !(hysteresis > 0.0) ||
      amplitude_ratio(series, transient_fraction) < 0.5) {
    throw ComputationError("no sustained oscillation detected");
  }
  return (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
}

double measure_period(const LimitTrajectory& trajectory, std::size_t component,
                      double transient_fraction) {
  if (component >= trajectory.kappa) throw InvalidArgument("measure_period: bad component");
  const auto series = trajectory.component(component);
  return measure_period(trajectory.times, series, transient_fraction);
}

}  // namespace hawkes
