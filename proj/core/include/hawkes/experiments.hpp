#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hawkes/cascade.hpp"
#include "hawkes/kernel.hpp"
#include "hawkes/pdmp.hpp"
#include "hawkes/stats.hpp"

namespace hawkes {

/// Runs `count` independent work items on up to `threads` workers. Results are
/// stored by index, so the output never depends on scheduling.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

template <class T>
std::vector<T> run_replicates(std::size_t count, unsigned threads,
                              const std::function<T(std::size_t)>& body) {
  std::vector<T> out(count);
  parallel_for(count, threads, [&](std::size_t i) { out[i] = body(i); });
  return out;
}

/// A named statistic with its standard error and sample size.
struct Statistic {
  std::string name;
  double value = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

/// One grid cell of an experiment: its coordinates and its statistics.
struct ReportCell {
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<Statistic> statistics;
  std::vector<std::pair<std::string, std::string>> labels;
};

struct ExperimentReport {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t replicates = 0;
  std::vector<ReportCell> cells;
  std::vector<Statistic> summary;
  std::vector<std::string> flags;
  bool passed = true;
  double wall_seconds = 0.0;  // kept out of deterministic outputs
};

// ---------------------------------------------------------------------------
// Propagation of chaos

struct ChaosOptions {
  std::vector<std::uint64_t> sizes{20, 40, 80, 160, 320};  // total N, split evenly
  double horizon = 30.0;
  std::size_t replicates = 100;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct ChaosCell {
  std::uint64_t total = 0;
  stats::Summary delta;    // total discordant acceptances of the tagged neurons
  stats::Summary sup_gap;  // sum over k of sup_u |Zbar - Z| for the tagged neurons
};

struct ChaosResult {
  std::vector<ChaosCell> cells;
  std::optional<stats::LinearFit> fit;  // log E[Delta] against log N
  bool degenerate = false;
};

ChaosResult chaos_rate_experiment(const CascadeParams& params, const ChaosOptions& options);
ExperimentReport to_report(const ChaosResult& result, const ChaosOptions& options);

// ---------------------------------------------------------------------------
// Central limit theorem

struct CltOptions {
  std::vector<std::uint64_t> sizes{200, 200};
  double t = 30.0;
  std::size_t replicates = 500;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct CltResult {
  std::vector<double> limit_means;               // m_t^k
  std::vector<std::vector<double>> standardized;  // [k][replicate]
  std::vector<stats::Summary> moments;            // per population
  std::vector<double> anderson_darling;           // per population
  std::vector<double> scaled_l1;                  // sqrt(m) E|Z/m - 1|
  std::optional<double> correlation;              // populations 1 and 2
  double growth_ratio = 0.0;                      // min_k m_t^k / t
  CriticalityReport criticality;
};

CltResult clt_experiment(const CascadeParams& params, const CltOptions& options);
ExperimentReport to_report(const CltResult& result, const CltOptions& options);

// ---------------------------------------------------------------------------
// Weak error between the PDMP and the diffusion

/// Smooth bounded test function on the cascade state.
struct TestFunction {
  std::string name;
  std::function<double(std::span<const double>)> eval;
};

/// Standard deviations of the linear-noise approximation at time t (Gaussian
/// fluctuations of size N^{-1/2} around the limit started from zero).
std::vector<double> linear_noise_sd(const CascadeParams& params, const PopulationSizes& sizes,
                                    double t);

/// Parses "const", "tanh{c,center,scale}" or "tanh{c}": tanh of coordinate c
/// centred at its limit value at time t and scaled by its linear-noise
/// standard deviation at total size `reference_total`.
TestFunction make_test_function(const std::string& spec, const CascadeParams& params, double t,
                                std::uint64_t reference_total = 20);
/// Default set: a centred tanh on the output and top coordinates of every population.
std::vector<std::string> default_test_functions(const CascadeParams& params);

struct WeakErrorOptions {
  std::vector<std::uint64_t> sizes{20, 200};  // total N, split evenly
  double t = 0.2;
  double dt = 1e-4;
  std::vector<std::string> test_functions;  // empty: defaults
  std::size_t replicates = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct WeakErrorCell {
  std::uint64_t total = 0;
  std::string function;
  stats::Summary pdmp;
  stats::Summary diffusion;
  double gap = 0.0;         // E phi(X) - E phi(Y)
  double half_width = 0.0;  // 95% interval half width
};

struct WeakErrorVerdict {
  std::string function;
  bool decreasing = false;  // intervals separated with the larger N closer to zero
};

struct WeakErrorResult {
  std::vector<WeakErrorCell> cells;
  std::vector<WeakErrorVerdict> verdicts;  // smallest vs largest N per function
  bool conclusive = false;
};

WeakErrorResult weak_error_experiment(const CascadeParams& params, const WeakErrorOptions& options);
ExperimentReport to_report(const WeakErrorResult& result, const WeakErrorOptions& options);

// ---------------------------------------------------------------------------
// Tube occupancy around the limit orbit

struct TubeOptions {
  std::vector<std::uint64_t> sizes{1000, 1000};
  double horizon = 1000.0;
  double dt = 1e-3;
  std::vector<double> epsilons{0.1};  // relative to the orbit amplitude
  double transient = 300.0;
  double orbit_horizon = 2000.0;
  std::size_t orbit_samples = 2000;
  std::size_t sample_every = 10;
  std::uint64_t seed = 1;
};

struct Orbit {
  std::size_t kappa = 0;
  std::vector<double> points;  // row-major samples x kappa
  double period = 0.0;
  double amplitude = 0.0;  // max distance of an orbit sample to the centroid

  std::size_t size() const { return kappa == 0 ? 0 : points.size() / kappa; }
  double distance(std::span<const double> x) const;
};

/// One measured period of the limit ODE after a 60% transient cut.
Orbit reference_orbit(const CascadeParams& params, double horizon, std::size_t samples);

struct TubeCell {
  double epsilon = 0.0;  // relative
  double radius = 0.0;   // absolute
  double occupancy = 0.0;
  double longest_visit = 0.0;
  std::size_t visits = 0;
};

struct TubeResult {
  Orbit orbit;
  std::vector<TubeCell> cells;
  std::vector<double> times;      // post-transient sample times
  std::vector<double> distances;  // distance to the orbit at each sample
};

TubeResult tube_occupancy(const CascadeParams& params, const TubeOptions& options);
ExperimentReport to_report(const TubeResult& result, const TubeOptions& options);

// ---------------------------------------------------------------------------
// Phase transitions in the memory order

struct PhaseOptions {
  std::vector<int> kappas{4, 8, 12, 16, 20, 24};
  double horizon = 6000.0;
  unsigned threads = 1;
};

struct PhaseCell {
  KappaVerdict verdict;
  bool oscillatory = false;  // spectral verdict
  double amplitude_ratio = 0.0;
  bool sustained = false;  // trajectory classification
  bool agree = false;
};

struct PhaseResult {
  std::vector<PhaseCell> cells;
  bool diagonal = true;
};

/// Sustained when the peak-to-peak of x^{1,0} over the last tenth of the
/// horizon is at least half that over [0.1, 0.2] of the horizon.
double decay_ratio(const LimitTrajectory& trajectory, std::size_t component);
PhaseResult phase_transition_sweep(const CascadeParams& templ, const PhaseOptions& options);
ExperimentReport to_report(const PhaseResult& result, const PhaseOptions& options);

}  // namespace hawkes
