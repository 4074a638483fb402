#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hawkes/cascade.hpp"
#include "hawkes/matrix.hpp"
#include "hawkes/pdmp.hpp"

namespace hawkes {

/// Small-noise diffusion dY = b(Y)dt + N^{-1/2} sigma(Y) dB.
///
/// The analyzed case has two populations. Any n >= 1 is accepted: sigma then
/// has one noise column per population (an extension of the two-population
/// matrix with the same structure); `is_two_population()` tells them apart.
struct DiffusionParams {
  CascadeParams cascade;
  PopulationSizes sizes;
  double dt = 1e-3;
  double noise_scale = 1.0;  // 0 switches the noise off
  std::optional<CascadeState> initial;  // defaults to the zero state

  void validate() const;
  bool is_two_population() const { return cascade.populations() == 2; }
};

/// Drift: the cascade vector field itself.
void drift_b(const CascadeParams& params, std::span<const double> state, std::span<double> out);
CascadeState drift_b(const CascadeParams& params, std::span<const double> state);

/// kappa x n matrix. The only nonzero entries are at row (k, eta_k),
/// column k+1: c_k sqrt(f_{k+1}(x^{k+1,0})) / sqrt(p_{k+1}).
Matrix diffusion_sigma(const DiffusionParams& params, std::span<const double> state);

/// Euler-Maruyama from the zero state (or `initial`). Samples the path every
/// `sample_every` steps; the Zbar columns carry the diffusion counterpart of
/// the averaged counts, dZbar_k = f_k dt + sqrt(f_k / N_k) dB_k.
SampledPath euler_maruyama(const DiffusionParams& params, double horizon, std::uint64_t seed,
                           std::size_t sample_every = 1);

/// State at time `horizon` only, without storing the path.
CascadeState euler_maruyama_endpoint(const DiffusionParams& params, double horizon,
                                     std::uint64_t seed);

/// Smoothed absolute value: (x^4 + 3)/4 on [-1, 1], |x| outside.
double smoothed_abs(double x);

struct LyapunovConfig {
  std::vector<double> coefficients;  // (l+1)/nu_k^l per flat coordinate

  static LyapunovConfig for_params(const CascadeParams& params);
};

/// G(x) = sum_k sum_l (l+1)/nu_k^l j(x^{k,l}).
double lyapunov_G(std::span<const double> state, const LyapunovConfig& config);

struct LyapunovDiagnostics {
  double c_hat = 0.0;
  double d_hat = 0.0;
  double fraction_in_compact = 0.0;  // share of samples with G <= 2 d_hat / c_hat
  double g_quantile90 = 0.0;
  std::size_t excursions = 0;         // completed excursions above the quantile
  double mean_return_time = 0.0;
  std::optional<double> return_rate;  // exponential-tail fit 1 / mean return time
};

/// Regresses finite-difference increments of G on G along a sampled path,
/// (G_{i+lag} - G_i)/(lag dt) ~ -c G_i + d, and summarizes returns to
/// {G <= 90% quantile}. Needs at least 100 samples.
LyapunovDiagnostics lyapunov_drift_estimate(const SampledPath& path, const LyapunovConfig& config,
                                            std::size_t lag = 10);

}  // namespace hawkes
