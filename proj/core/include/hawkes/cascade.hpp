#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hawkes/kernel.hpp"
#include "hawkes/rate.hpp"

namespace hawkes {

/// One population of the cyclic network. Its input is the Erlang-filtered
/// activity of the cyclic successor population (k+1 mod n).
struct Population {
  int eta = 0;       // kernel order
  double nu = 1.0;   // kernel rate
  int sign = 1;      // c_k: -1 inhibitory, +1 excitatory
  RateFunction rate;
};

/// Parameters of the cascade: population k owns coordinates x^{k,0..eta_k},
/// laid out contiguously, so the flat state has length kappa = n + sum eta_k.
class CascadeParams {
 public:
  CascadeParams() = default;
  explicit CascadeParams(std::vector<Population> populations);

  std::size_t populations() const { return pops_.size(); }
  std::size_t kappa() const { return kappa_; }
  const Population& population(std::size_t k) const { return pops_[k]; }
  std::span<const Population> all() const { return pops_; }

  std::size_t successor(std::size_t k) const { return (k + 1) % pops_.size(); }
  /// Flat index of x^{k,l}.
  std::size_t index(std::size_t k, std::size_t l) const { return offsets_[k] + l; }
  /// Flat index of x^{k,0}, the input felt by population k.
  std::size_t output_index(std::size_t k) const { return offsets_[k]; }
  /// Flat index of x^{k,eta_k}, the coordinate receiving spikes of k+1.
  std::size_t top_index(std::size_t k) const {
    return offsets_[k] + static_cast<std::size_t>(pops_[k].eta);
  }

  int sign_product() const;
  bool equal_nu() const;
  double max_nu() const;

  /// Copy with every nu replaced.
  CascadeParams with_nu(double nu) const;
  /// Copy with every eta replaced.
  CascadeParams with_eta(int eta) const;

  KernelMatrix kernels() const;
  std::vector<double> lipschitz() const;

 private:
  std::vector<Population> pops_;
  std::vector<std::size_t> offsets_;
  std::size_t kappa_ = 0;
};

using CascadeState = std::vector<double>;

/// Cascade drift written into `out` (length kappa).
void vector_field(const CascadeParams& params, std::span<const double> state,
                  std::span<double> out);
CascadeState vector_field(const CascadeParams& params, std::span<const double> state);

/// Limit-system solution on a uniform grid: states and cumulative means m^k.
struct LimitTrajectory {
  std::size_t kappa = 0;
  std::size_t populations = 0;
  std::vector<double> times;
  std::vector<double> states;  // row-major, times.size() x kappa
  std::vector<double> means;   // row-major, times.size() x populations

  std::size_t size() const { return times.size(); }
  std::span<const double> state(std::size_t i) const {
    return {states.data() + i * kappa, kappa};
  }
  double mean(std::size_t i, std::size_t k) const { return means[i * populations + k]; }
  std::vector<double> component(std::size_t c) const;
  /// Linear interpolation of coordinate c at time t inside the grid.
  double interpolate(std::size_t c, double t) const;
};

/// Default integration step: min(0.01, 0.05 / max nu).
double default_dt(const CascadeParams& params);

/// Classic RK4 from the zero state with m^k' = f_k(x^{k,0}). The step is
/// adjusted to t_end / round(t_end / dt) so the grid ends exactly at t_end.
LimitTrajectory integrate(const CascadeParams& params, double t_end,
                          std::optional<double> dt = std::nullopt,
                          std::span<const double> initial = {});

/// Unique equilibrium of a negative-feedback cascade with monotone rates.
CascadeState find_equilibrium(const CascadeParams& params);

/// rho = prod_k c_k f_k'(x^{k,0}) at the equilibrium.
double compute_rho(const CascadeParams& params, std::span<const double> equilibrium);

using Roots = std::vector<std::complex<double>>;

/// Ascending coefficients of prod_k (nu_k + lambda)^{eta_k+1} - rho.
std::vector<double> characteristic_polynomial(const CascadeParams& params, double rho);

/// Equal-nu closed form: lambda = -nu + |rho|^{1/kappa} w, w^kappa = sign(rho).
Roots characteristic_roots_closed_form(const CascadeParams& params, double rho);
/// Companion-matrix eigenvalues of the expanded polynomial, Newton-polished.
Roots characteristic_roots_companion(const CascadeParams& params, double rho);

/// All kappa roots sorted by descending real part (then descending imaginary
/// part). Uses the closed form when all nu are equal. Throws when a root's
/// residual exceeds 1e-8.
Roots characteristic_roots(const CascadeParams& params, double rho);

/// |prod_k (nu_k + lambda)^{eta_k+1} - rho|.
double characteristic_residual(const CascadeParams& params, double rho,
                               std::complex<double> lambda);

struct StabilityReport {
  CascadeState equilibrium;
  double rho = 0.0;
  Roots roots;
  int unstable_roots = 0;  // roots with Re > 0
  double max_real = 0.0;
  bool oscillatory = false;  // at least two roots with Re > 0
  // Equal-nu only.
  std::optional<bool> unstable2;  // |rho| > nu^kappa / cos(pi/kappa)^kappa, kappa >= 3
  std::optional<double> threshold;  // nu^kappa / cos(pi/kappa)^kappa
  std::optional<double> omega;      // |rho|^{1/kappa} sin(pi/kappa)
  std::optional<double> period;     // 2 pi / omega
};

StabilityReport check_oscillation(const CascadeParams& params);

struct ScanSample {
  double parameter = 0.0;
  double max_real = 0.0;
  bool oscillatory = false;
  double rho = 0.0;
  std::optional<double> period;
};

struct HopfPoint {
  double nu = 0.0;
  bool onset = false;  // max Re goes from negative to positive as nu increases
};

struct HopfScan {
  std::vector<ScanSample> samples;
  std::vector<HopfPoint> points;
};

/// Scans nu over [nu_min, nu_max] with the given step (all populations share
/// nu) and refines every sign change of the leading real part by bisection.
HopfScan hopf_scan(const CascadeParams& templ, double nu_min, double nu_max, double step);

struct KappaVerdict {
  std::size_t kappa = 0;
  int eta = 0;
  CascadeState equilibrium;
  double rho = 0.0;
  double threshold = 0.0;
  bool unstable2 = false;
  int unstable_roots = 0;
  double max_real = 0.0;
  std::optional<double> period;
};

/// Symmetric template: every population gets eta = kappa/n - 1.
std::vector<KappaVerdict> kappa_scan(const CascadeParams& templ, std::span<const int> kappas);

/// Peak-to-peak of `series` over sample indices [begin, end).
double peak_to_peak(std::span<const double> series, std::size_t begin, std::size_t end);

/// Late/early peak-to-peak ratio over the post-transient part of `series`:
/// early is the first fifth after the cut, late the last fifth.
double amplitude_ratio(std::span<const double> series, double transient_fraction);

/// Mean spacing of upward crossings of the post-transient mean. Throws
/// ComputationError("no sustained oscillation detected") with fewer than 5
/// crossings or when the amplitude decays below half its early value.
double measure_period(std::span<const double> times, std::span<const double> series,
                      double transient_fraction = 0.4);
double measure_period(const LimitTrajectory& trajectory, std::size_t component,
                      double transient_fraction = 0.4);

}  // namespace hawkes
