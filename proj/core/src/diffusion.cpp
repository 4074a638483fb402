#include "hawkes/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hawkes/error.hpp"
#include "hawkes/random.hpp"

namespace hawkes {
namespace {

class EulerMaruyama {
 public:
  EulerMaruyama(const DiffusionParams& params, std::uint64_t seed)
      : p_(params), rng_(seed), y_(params.cascade.kappa(), 0.0), drift_(params.cascade.kappa()),
        zbar_(params.cascade.populations(), 0.0), rates_(params.cascade.populations()),
        noise_(params.cascade.populations()) {
    p_.validate();
    if (p_.initial) y_ = *p_.initial;
    const std::size_t n = p_.cascade.populations();
    inv_sqrt_size_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      inv_sqrt_size_[k] = p_.noise_scale / std::sqrt(static_cast<double>(p_.sizes[k]));
    }
  }

  void step(double h) {
    const auto& cascade = p_.cascade;
    const std::size_t n = cascade.populations();
    drift_b(cascade, y_, drift_);
    for (std::size_t k = 0; k < n; ++k) {
      rates_[k] = cascade.population(k).rate(y_[cascade.output_index(k)]);
    }
    const double sqrt_h = std::sqrt(h);
    for (std::size_t k = 0; k < n; ++k) noise_[k] = sqrt_h * rng_.normal();
    for (std::size_t i = 0; i < y_.size(); ++i) y_[i] += h * drift_[i];
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t source = cascade.successor(k);
      const double shock = std::sqrt(rates_[source]) * inv_sqrt_size_[source] * noise_[source];
      y_[cascade.top_index(k)] += cascade.population(k).sign * shock;
    }
    for (std::size_t k = 0; k < n; ++k) {
      zbar_[k] += rates_[k] * h + std::sqrt(rates_[k]) * inv_sqrt_size_[k] * noise_[k];
    }
    for (std::size_t i = 0; i < y_.size(); ++i) {
      if (!std::isfinite(y_[i])) {
        throw ComputationError("euler_maruyama: non-finite state in component " +
                               std::to_string(i));
      }
    }
  }

  const CascadeState& state() const { return y_; }
  const std::vector<double>& zbar() const { return zbar_; }

 private:
  DiffusionParams p_;
  CounterRng rng_;
  CascadeState y_;
  CascadeState drift_;
  std::vector<double> zbar_;
  std::vector<double> rates_;
  std::vector<double> noise_;
  std::vector<double> inv_sqrt_size_;
};

std::pair<std::size_t, double> step_plan(double horizon, double dt) {
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw InvalidArgument("euler_maruyama: horizon must be finite and >= 0");
  }
  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
  return {steps, steps == 0 ? dt : horizon / static_cast<double>(steps)};
}

}  // namespace

void DiffusionParams::validate() const {
  if (sizes.populations() != cascade.populations()) {
    throw InvalidArgument("diffusion: population sizes do not match the cascade");
  }
  if (!(dt > 0.0)) throw InvalidArgument("diffusion: dt must be > 0");
  if (!(noise_scale >= 0.0)) throw InvalidArgument("diffusion: noise scale must be >= 0");
  for (const auto& p : cascade.all()) {
    if (!std::isfinite(p.rate.sup())) throw InvalidArgument("diffusion requires bounded rates");
  }
  if (initial && initial->size() != cascade.kappa()) {
    throw InvalidArgument("diffusion: initial state has the wrong length");
  }
}

void drift_b(const CascadeParams& params, std::span<const double> state, std::span<double> out) {
  vector_field(params, state, out);
}

CascadeState drift_b(const CascadeParams& params, std::span<const double> state) {
  return vector_field(params, state);
}

Matrix diffusion_sigma(const DiffusionParams& params, std::span<const double> state) {
  const auto& cascade = params.cascade;
  if (state.size() != cascade.kappa()) throw InvalidArgument("diffusion_sigma: bad state length");
  const std::size_t n = cascade.populations();
  Matrix sigma(cascade.kappa(), n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t source = cascade.successor(k);
    const double rate = cascade.population(source).rate(state[cascade.output_index(source)]);
    sigma(cascade.top_index(k), source) +=
        cascade.population(k).sign * std::sqrt(rate) / std::sqrt(params.sizes.fraction(source));
  }
  return sigma;
}

SampledPath euler_maruyama(const DiffusionParams& params, double horizon, std::uint64_t seed,
                           std::size_t sample_every) {
  if (sample_every == 0) throw InvalidArgument("euler_maruyama: sample_every must be >= 1");
  EulerMaruyama em(params, seed);
  const auto [steps, h] = step_plan(horizon, params.dt);
  SampledPath path;
  path.kappa = params.cascade.kappa();
  path.populations = params.cascade.populations();
  auto record = [&](double t) {
    path.times.push_back(t);
    path.states.insert(path.states.end(), em.state().begin(), em.state().end());
    path.zbar.insert(path.zbar.end(), em.zbar().begin(), em.zbar().end());
  };
  record(0.0);
  for (std::size_t s = 1; s <= steps; ++s) {
    em.step(h);
    if (s % sample_every == 0 || s == steps) record(static_cast<double>(s) * h);
  }
  return path;
}

CascadeState euler_maruyama_endpoint(const DiffusionParams& params, double horizon,
                                     std::uint64_t seed) {
  EulerMaruyama em(params, seed);
  const auto [steps, h] = step_plan(horizon, params.dt);
  for (std::size_t s = 0; s < steps; ++s) em.step(h);
  return em.state();
}

double smoothed_abs(double x) {
  const double a = std::abs(x);
  if (a >= 1.0) return a;
  const double x2 = x * x;
  return 0.25 * (x2 * x2 + 3.0);
}

LyapunovConfig LyapunovConfig::for_params(const CascadeParams& params) {
  LyapunovConfig config;
  config.coefficients.resize(params.kappa());
  for (std::size_t k = 0; k < params.populations(); ++k) {
    const auto& p = params.population(k);
    for (int l = 0; l <= p.eta; ++l) {
      config.coefficients[params.index(k, static_cast<std::size_t>(l))] =
          (l + 1.0) / std::pow(p.nu, l);
    }
  }
  return config;
}

double lyapunov_G(std::span<const double> state, const LyapunovConfig& config) {
  if (state.size() != config.coefficients.size()) {
    throw InvalidArgument("lyapunov_G: state length does not match the configuration");
  }
  double g = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) g += config.coefficients[i] * smoothed_abs(state[i]);
  return g;
}

LyapunovDiagnostics lyapunov_drift_estimate(const SampledPath& path, const LyapunovConfig& config,
                                            std::size_t lag) {
  if (path.size() < 100) {
    throw InvalidArgument("lyapunov_drift_estimate: trajectory too short (< 100 samples)");
  }
  if (lag == 0 || lag >= path.size()) throw InvalidArgument("lyapunov_drift_estimate: bad lag");
  std::vector<double> g(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) g[i] = lyapunov_G(path.state(i), config);

  // Ordinary least squares of the forward difference quotient on G.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const std::size_t m = path.size() - lag;
  for (std::size_t i = 0; i < m; ++i) {
    const double y = (g[i + lag] - g[i]) / (path.times[i + lag] - path.times[i]);
    sx += g[i];
    sy += y;
    sxx += g[i] * g[i];
    sxy += g[i] * y;
  }
  const double md = static_cast<double>(m);
  const double var = sxx - sx * sx / md;
  LyapunovDiagnostics out;
  if (var > 0.0) {
    const double slope = (sxy - sx * sy / md) / var;
    out.c_hat = -slope;
    out.d_hat = (sy - slope * sx) / md;
  }
  if (out.c_hat > 0.0) {
    const double level = 2.0 * out.d_hat / out.c_hat;
    out.fraction_in_compact =
        static_cast<double>(std::count_if(g.begin(), g.end(), [&](double v) { return v <= level; })) /
        static_cast<double>(g.size());
  }

  auto sorted = g;
  std::sort(sorted.begin(), sorted.end());
  out.g_quantile90 = sorted[static_cast<std::size_t>(0.9 * static_cast<double>(sorted.size() - 1))];
  double total = 0.0;
  std::optional<double> left;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const bool outside = g[i] > out.g_quantile90;
    if (outside && !left) left = path.times[i];
    if (!outside && left) {
      total += path.times[i] - *left;
      ++out.excursions;
      left.reset();
    }
  }
  if (out.excursions > 0) {
    out.mean_return_time = total / static_cast<double>(out.excursions);
    if (out.mean_return_time > 0.0) out.return_rate = 1.0 / out.mean_return_time;
  }
  return out;
}

}  // namespace hawkes
