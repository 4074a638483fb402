#include "hawkes/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "hawkes/diffusion.hpp"
#include "hawkes/error.hpp"
#include "hawkes/random.hpp"

namespace hawkes {
namespace {

std::string label_with(std::string_view prefix, std::uint64_t value) {
  return std::string(prefix) + ":" + std::to_string(value);
}

Statistic stat(std::string name, const stats::Summary& s) {
  return {std::move(name), s.mean, s.std_error, s.count};
}

Statistic exact(std::string name, double value, std::size_t count = 1) {
  return {std::move(name), value, 0.0, count};
}

std::vector<std::uint64_t> split_even(std::uint64_t total, std::size_t n) {
  const auto sizes = PopulationSizes::even(total, n);
  return {sizes.counts().begin(), sizes.counts().end()};
}

}  // namespace

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------

ChaosResult chaos_rate_experiment(const CascadeParams& params, const ChaosOptions& options) {
  if (options.sizes.size() < 4) throw InvalidArgument("chaos: need >= 4 grid points");
  const auto [lo, hi] = std::minmax_element(options.sizes.begin(), options.sizes.end());
  if (static_cast<double>(*hi) < 10.0 * static_cast<double>(*lo)) {
    throw InvalidArgument("chaos: N grid must span at least one decade");
  }
  if (options.replicates < 2) throw InvalidArgument("chaos: need >= 2 replicates");
  const std::size_t n = params.populations();
  for (auto total : options.sizes) {
    if (total < n) throw InvalidArgument("chaos: every N must be >= the number of populations");
  }
  const auto limit = integrate(params, options.horizon);

  ChaosResult result;
  for (auto total : options.sizes) {
    const PopulationSizes sizes(split_even(total, n));
    struct Sample {
      double delta = 0.0, gap = 0.0;
    };
    const auto samples = run_replicates<Sample>(
        options.replicates, options.threads, [&](std::size_t r) {
          const auto seed = derive_seed(options.seed, label_with("chaos", total), r);
          const auto coupled = simulate_coupled(params, sizes, options.horizon, seed, limit);
          return Sample{coupled.total_delta(options.horizon), coupled.total_sup_gap()};
        });
    std::vector<double> deltas, gaps;
    for (const auto& s : samples) {
      deltas.push_back(s.delta);
      gaps.push_back(s.gap);
    }
    result.cells.push_back({total, stats::summarize(deltas), stats::summarize(gaps)});
  }

  std::vector<double> xs, ys, errs;
  for (const auto& cell : result.cells) {
    if (!(cell.delta.mean > 0.0) || !(cell.delta.std_error > 0.0)) {
      result.degenerate = true;
      break;
    }
    xs.push_back(std::log(static_cast<double>(cell.total)));
    ys.push_back(std::log(cell.delta.mean));
    errs.push_back(cell.delta.std_error / cell.delta.mean);
  }
  if (!result.degenerate) result.fit = stats::weighted_linear_fit(xs, ys, errs);
  return result;
}

ExperimentReport to_report(const ChaosResult& result, const ChaosOptions& options) {
  ExperimentReport report;
  report.name = "chaos";
  report.seed = options.seed;
  report.replicates = options.replicates;
  for (const auto& cell : result.cells) {
    ReportCell rc;
    rc.parameters = {{"N", static_cast<double>(cell.total)}, {"horizon", options.horizon}};
    rc.statistics = {stat("delta", cell.delta), stat("sup_gap", cell.sup_gap)};
    report.cells.push_back(std::move(rc));
  }
  if (result.fit) {
    report.summary.push_back({"slope", result.fit->slope, result.fit->slope_se, result.cells.size()});
    report.summary.push_back(
        {"intercept", result.fit->intercept, result.fit->intercept_se, result.cells.size()});
  } else {
    report.flags.push_back("degenerate-fit");
  }
  return report;
}

// ---------------------------------------------------------------------------

CltResult clt_experiment(const CascadeParams& params, const CltOptions& options) {
  const std::size_t n = params.populations();
  const PopulationSizes sizes(options.sizes);
  if (sizes.populations() != n) throw InvalidArgument("clt: sizes do not match the populations");
  if (options.replicates < 2) throw InvalidArgument("clt: need >= 2 replicates");

  CltResult result;
  const auto limit = integrate(params, options.t);
  for (std::size_t k = 0; k < n; ++k) result.limit_means.push_back(limit.mean(limit.size() - 1, k));
  for (double m : result.limit_means) {
    if (m < 10.0) throw InvalidArgument("clt: t too small for asymptotics");
  }
  result.growth_ratio =
      *std::min_element(result.limit_means.begin(), result.limit_means.end()) / options.t;
  result.criticality = classify_criticality(params.kernels(), params.lipschitz());

  const auto counts = run_replicates<std::vector<std::uint64_t>>(
      options.replicates, options.threads, [&](std::size_t r) {
        const auto seed = derive_seed(options.seed, "clt", r);
        return simulate_pdmp(params, sizes, options.t, seed).first_neuron_counts;
      });

  result.standardized.assign(n, {});
  for (std::size_t k = 0; k < n; ++k) {
    const double m = result.limit_means[k];
    std::vector<double> l1;
    for (const auto& c : counts) {
      const double z = static_cast<double>(c[k]);
      result.standardized[k].push_back((z - m) / std::sqrt(m));
      l1.push_back(std::abs(z / m - 1.0));
    }
    result.moments.push_back(stats::summarize(result.standardized[k]));
    result.anderson_darling.push_back(stats::anderson_darling(result.standardized[k]));
    result.scaled_l1.push_back(std::sqrt(m) * stats::mean(l1));
  }
  if (n >= 2) result.correlation = stats::correlation(result.standardized[0], result.standardized[1]);
  return result;
}

ExperimentReport to_report(const CltResult& result, const CltOptions& options) {
  ExperimentReport report;
  report.name = "clt";
  report.seed = options.seed;
  report.replicates = options.replicates;
  const std::size_t reps = options.replicates;
  for (std::size_t k = 0; k < result.moments.size(); ++k) {
    const auto& mom = result.moments[k];
    ReportCell rc;
    rc.parameters = {{"population", static_cast<double>(k + 1)},
                     {"N_k", static_cast<double>(options.sizes[k])},
                     {"t", options.t}};
    // Standard error of the sample variance under normality.
    const double var_se = mom.variance * std::sqrt(2.0 / static_cast<double>(reps - 1));
    rc.statistics = {exact("limit_mean", result.limit_means[k]),
                     stat("mean", mom),
                     {"variance", mom.variance, var_se, reps},
                     exact("anderson_darling", result.anderson_darling[k], reps),
                     exact("scaled_l1", result.scaled_l1[k], reps)};
    rc.labels = {{"normality_1pct", result.anderson_darling[k] < stats::kAndersonDarlingCritical1
                                        ? "pass"
                                        : "reject"}};
    report.cells.push_back(std::move(rc));
  }
  if (result.correlation) {
    report.summary.push_back(
        {"correlation", *result.correlation, 1.0 / std::sqrt(static_cast<double>(reps)), reps});
  }
  report.summary.push_back(exact("growth_ratio", result.growth_ratio));
  report.summary.push_back(exact("spectral_radius", result.criticality.radius));
  if (result.criticality.alpha0) report.summary.push_back(exact("alpha0", *result.criticality.alpha0));
  report.flags.push_back(std::string("criticality:") + to_string(result.criticality.regime));
  return report;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> parse_numbers(const std::string& body) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const auto comma = body.find(',', pos);
    const auto token = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("test function: bad number '" + token + "'");
    }
    if (token.find_first_not_of(' ', used) != std::string::npos) {
      throw InvalidArgument("test function: bad number '" + token + "'");
    }
    values.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

}  // namespace

std::vector<double> linear_noise_sd(const CascadeParams& params, const PopulationSizes& sizes,
                                    double t) {
  const std::size_t kappa = params.kappa(), n = params.populations();
  if (sizes.populations() != n) throw InvalidArgument("linear noise: sizes do not match");
  std::vector<double> x(kappa, 0.0), cov(kappa * kappa, 0.0), jac(kappa * kappa), dcov(kappa * kappa);
  CascadeState dx(kappa);
  const auto steps = static_cast<std::size_t>(std::ceil(t / 1e-4));
  const double h = steps ? t / static_cast<double>(steps) : 0.0;
  for (std::size_t s = 0; s < steps; ++s) {
    std::fill(jac.begin(), jac.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& p = params.population(k);
      for (int l = 0; l <= p.eta; ++l) {
        const std::size_t i = params.index(k, static_cast<std::size_t>(l));
        jac[i * kappa + i] = -p.nu;
        if (l < p.eta) jac[i * kappa + i + 1] = 1.0;
      }
      const std::size_t src = params.successor(k);
      jac[params.top_index(k) * kappa + params.output_index(src)] =
          p.sign * params.population(src).rate.derivative(x[params.output_index(src)]);
    }
    for (std::size_t i = 0; i < kappa; ++i) {
      for (std::size_t j = 0; j < kappa; ++j) {
        double v = 0.0;
        for (std::size_t m = 0; m < kappa; ++m) {
          v += jac[i * kappa + m] * cov[m * kappa + j] + cov[i * kappa + m] * jac[j * kappa + m];
        }
        dcov[i * kappa + j] = v;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t src = params.successor(k), top = params.top_index(k);
      dcov[top * kappa + top] += params.population(src).rate(x[params.output_index(src)]) /
                                 static_cast<double>(sizes[src]);
    }
    vector_field(params, x, dx);
    for (std::size_t i = 0; i < kappa; ++i) x[i] += h * dx[i];
    for (std::size_t i = 0; i < cov.size(); ++i) cov[i] += h * dcov[i];
  }
  std::vector<double> sd(kappa);
  for (std::size_t i = 0; i < kappa; ++i) sd[i] = std::sqrt(std::max(0.0, cov[i * kappa + i]));
  return sd;
}

TestFunction make_test_function(const std::string& spec, const CascadeParams& params, double t,
                                std::uint64_t reference_total) {
  if (spec == "const") return {spec, [](std::span<const double>) { return 1.0; }};
  if (spec.rfind("tanh{", 0) == 0 && spec.back() == '}') {
    const auto args = parse_numbers(spec.substr(5, spec.size() - 6));
    if (args.empty() || args.size() == 2 || args.size() > 3) {
      throw InvalidArgument("test function: expected tanh{c} or tanh{c,center,scale}");
    }
    if (args[0] < 0 || args[0] != std::floor(args[0]) ||
        static_cast<std::size_t>(args[0]) >= params.kappa()) {
      throw InvalidArgument("test function: coordinate out of range in '" + spec + "'");
    }
    const auto c = static_cast<std::size_t>(args[0]);
    double center = 0.0, scale = 1.0;
    if (args.size() == 3) {
      center = args[1];
      scale = args[2];
    } else if (t > 0.0) {
      const auto lim = integrate(params, t);
      center = lim.state(lim.size() - 1)[c];
      const auto sizes = PopulationSizes::even(std::max<std::uint64_t>(reference_total, params.populations()),
                                               params.populations());
      scale = linear_noise_sd(params, sizes, t)[c];
      if (!(scale > 0.0)) scale = 1.0;
    }
    if (!(scale > 0.0)) throw InvalidArgument("test function: scale must be > 0");
    return {spec, [c, center, scale](std::span<const double> x) {
              return std::tanh((x[c] - center) / scale);
            }};
  }
  throw InvalidArgument("unknown test function '" + spec + "'");
}

std::vector<std::string> default_test_functions(const CascadeParams& params) {
  std::vector<std::string> specs;
  for (std::size_t k = 0; k < params.populations(); ++k) {
    specs.push_back("tanh{" + std::to_string(params.top_index(k)) + "}");
    if (params.top_index(k) != params.output_index(k)) {
      specs.push_back("tanh{" + std::to_string(params.output_index(k)) + "}");
    }
  }
  return specs;
}

WeakErrorResult weak_error_experiment(const CascadeParams& params,
                                      const WeakErrorOptions& options) {
  if (options.sizes.size() < 2) throw InvalidArgument("weak-error: need >= 2 population sizes");
  if (!(options.t >= 0.0)) throw InvalidArgument("weak-error: t must be >= 0");
  if (options.replicates < 2) throw InvalidArgument("weak-error: need >= 2 replicates");
  const auto specs =
      options.test_functions.empty() ? default_test_functions(params) : options.test_functions;
  std::vector<TestFunction> functions;
  const auto reference = *std::min_element(options.sizes.begin(), options.sizes.end());
  for (const auto& s : specs) {
    functions.push_back(make_test_function(s, params, options.t, reference));
  }

  const std::size_t n = params.populations();
  WeakErrorResult result;
  for (auto total : options.sizes) {
    const PopulationSizes sizes(split_even(total, n));
    DiffusionParams dp{params, sizes, options.dt, 1.0, std::nullopt};
    dp.validate();
    const auto pdmp_states = run_replicates<CascadeState>(
        options.replicates, options.threads, [&](std::size_t r) {
          const auto seed = derive_seed(options.seed, label_with("weak/pdmp", total), r);
          return simulate_pdmp(params, sizes, options.t, seed).final_state.x;
        });
    const auto diffusion_states = run_replicates<CascadeState>(
        options.replicates, options.threads, [&](std::size_t r) {
          const auto seed = derive_seed(options.seed, label_with("weak/diffusion", total), r);
          return euler_maruyama_endpoint(dp, options.t, seed);
        });
    for (const auto& fn : functions) {
      std::vector<double> a, b;
      for (const auto& x : pdmp_states) a.push_back(fn.eval(x));
      for (const auto& y : diffusion_states) b.push_back(fn.eval(y));
      WeakErrorCell cell;
      cell.total = total;
      cell.function = fn.name;
      cell.pdmp = stats::summarize(a);
      cell.diffusion = stats::summarize(b);
      cell.gap = cell.pdmp.mean - cell.diffusion.mean;
      cell.half_width = 1.96 * std::hypot(cell.pdmp.std_error, cell.diffusion.std_error);
      result.cells.push_back(std::move(cell));
    }
  }

  const auto [lo, hi] = std::minmax_element(options.sizes.begin(), options.sizes.end());
  result.conclusive = true;
  for (const auto& fn : functions) {
    const WeakErrorCell *small = nullptr, *large = nullptr;
    for (const auto& c : result.cells) {
      if (c.function != fn.name) continue;
      if (c.total == *lo) small = &c;
      if (c.total == *hi) large = &c;
    }
    const bool decreasing = small && large &&
                            std::abs(small->gap) - small->half_width >
                                std::abs(large->gap) + large->half_width;
    result.verdicts.push_back({fn.name, decreasing});
    result.conclusive = result.conclusive && decreasing;
  }
  return result;
}

ExperimentReport to_report(const WeakErrorResult& result, const WeakErrorOptions& options) {
  ExperimentReport report;
  report.name = "weak-error";
  report.seed = options.seed;
  report.replicates = options.replicates;
  for (const auto& cell : result.cells) {
    ReportCell rc;
    rc.parameters = {{"N", static_cast<double>(cell.total)}, {"t", options.t}};
    rc.labels = {{"function", cell.function}};
    rc.statistics = {stat("pdmp", cell.pdmp), stat("diffusion", cell.diffusion),
                     {"gap", cell.gap, cell.half_width / 1.96, options.replicates},
                     exact("ci95_half_width", cell.half_width, options.replicates)};
    report.cells.push_back(std::move(rc));
  }
  for (const auto& v : result.verdicts) {
    report.flags.push_back(v.function + (v.decreasing ? ":decreasing" : ":inconclusive"));
  }
  report.passed = result.conclusive;
  if (!result.conclusive) report.flags.push_back("inconclusive");
  return report;
}

// ---------------------------------------------------------------------------

double Orbit::distance(std::span<const double> x) const {
  if (x.size() != kappa) throw InvalidArgument("orbit distance: bad state length");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) {
    const double* p = points.data() + i * kappa;
    double d2 = 0.0;
    for (std::size_t c = 0; c < kappa && d2 < best; ++c) d2 += (x[c] - p[c]) * (x[c] - p[c]);
    best = std::min(best, d2);
  }
  return std::sqrt(best);
}

Orbit reference_orbit(const CascadeParams& params, double horizon, std::size_t samples) {
  if (samples < 10) throw InvalidArgument("orbit: need >= 10 samples");
  const auto report = check_oscillation(params);
  if (report.unstable_roots < 2) {
    throw InvalidArgument("tube: configuration is not oscillatory");
  }
  const auto traj = integrate(params, horizon);
  Orbit orbit;
  orbit.kappa = params.kappa();
  orbit.period = measure_period(traj, params.output_index(0), 0.6);
  const double dt = traj.times[1] - traj.times[0];
  const auto start = static_cast<std::size_t>(std::ceil(0.6 * static_cast<double>(traj.size() - 1)));
  if (traj.times[start] + orbit.period > traj.times.back()) {
    throw ComputationError("orbit: horizon too short for one period after the transient");
  }
  std::vector<double> centroid(orbit.kappa, 0.0);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = traj.times[start] + orbit.period * static_cast<double>(i) / static_cast<double>(samples);
    const auto j = std::min(static_cast<std::size_t>((t - traj.times[0]) / dt), traj.size() - 2);
    const double w = (t - traj.times[j]) / dt;
    for (std::size_t c = 0; c < orbit.kappa; ++c) {
      const double v = (1.0 - w) * traj.state(j)[c] + w * traj.state(j + 1)[c];
      orbit.points.push_back(v);
      centroid[c] += v / static_cast<double>(samples);
    }
  }
  for (std::size_t i = 0; i < samples; ++i) {
    double d2 = 0.0;
    for (std::size_t c = 0; c < orbit.kappa; ++c) {
      const double d = orbit.points[i * orbit.kappa + c] - centroid[c];
      d2 += d * d;
    }
    orbit.amplitude = std::max(orbit.amplitude, std::sqrt(d2));
  }
  return orbit;
}

TubeResult tube_occupancy(const CascadeParams& params, const TubeOptions& options) {
  if (options.epsilons.empty()) throw InvalidArgument("tube: need at least one epsilon");
  if (!(options.transient >= 0.0) || options.transient >= options.horizon) {
    throw InvalidArgument("tube: transient must lie inside the horizon");
  }
  TubeResult result;
  result.orbit = reference_orbit(params, options.orbit_horizon, options.orbit_samples);
  DiffusionParams dp{params, PopulationSizes(options.sizes), options.dt, 1.0, std::nullopt};
  dp.validate();
  const auto path =
      euler_maruyama(dp, options.horizon, derive_seed(options.seed, "tube", 0), options.sample_every);
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path.times[i] < options.transient) continue;
    result.times.push_back(path.times[i]);
    result.distances.push_back(result.orbit.distance(path.state(i)));
  }
  if (result.times.size() < 2) throw InvalidArgument("tube: too few samples after the transient");
  const double step = result.times[1] - result.times[0];
  for (double eps : options.epsilons) {
    if (!(eps > 0.0)) throw InvalidArgument("tube: epsilon must be > 0");
    TubeCell cell;
    cell.epsilon = eps;
    cell.radius = eps * result.orbit.amplitude;
    std::size_t inside = 0, run = 0, longest = 0;
    bool was_inside = false;
    for (double d : result.distances) {
      const bool in = d < cell.radius;
      if (in) {
        ++inside;
        ++run;
        longest = std::max(longest, run);
        if (!was_inside) ++cell.visits;
      } else {
        run = 0;
      }
      was_inside = in;
    }
    cell.occupancy = static_cast<double>(inside) / static_cast<double>(result.distances.size());
    cell.longest_visit = static_cast<double>(longest) * step;
    result.cells.push_back(cell);
  }
  return result;
}

ExperimentReport to_report(const TubeResult& result, const TubeOptions& options) {
  ExperimentReport report;
  report.name = "tube";
  report.seed = options.seed;
  report.replicates = 1;
  const std::size_t samples = result.distances.size();
  for (const auto& cell : result.cells) {
    ReportCell rc;
    rc.parameters = {{"epsilon", cell.epsilon}, {"radius", cell.radius}};
    const double p = cell.occupancy;
    rc.statistics = {{"occupancy", p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples},
                     exact("longest_visit", cell.longest_visit, samples),
                     exact("visits", static_cast<double>(cell.visits), samples)};
    report.cells.push_back(std::move(rc));
  }
  report.summary = {exact("orbit_period", result.orbit.period),
                    exact("orbit_amplitude", result.orbit.amplitude)};
  return report;
}

// ---------------------------------------------------------------------------

double decay_ratio(const LimitTrajectory& trajectory, std::size_t component) {
  const auto series = trajectory.component(component);
  const std::size_t m = series.size();
  if (m < 20) throw InvalidArgument("decay_ratio: trajectory too short");
  const auto at = [m](double f) { return static_cast<std::size_t>(f * static_cast<double>(m - 1)); };
  const double early = peak_to_peak(series, at(0.1), at(0.2) + 1);
  const double late = peak_to_peak(series, at(0.9), m);
  return early > 0.0 ? late / early : 0.0;
}

PhaseResult phase_transition_sweep(const CascadeParams& templ, const PhaseOptions& options) {
  if (!templ.equal_nu()) throw InvalidArgument("phase sweep: template must have equal nu");
  const auto verdicts = kappa_scan(templ, options.kappas);
  PhaseResult result;
  result.cells.resize(verdicts.size());
  parallel_for(verdicts.size(), options.threads, [&](std::size_t i) {
    PhaseCell cell;
    cell.verdict = verdicts[i];
    cell.oscillatory = verdicts[i].unstable2;
    const auto params = templ.with_eta(verdicts[i].eta);
    const auto traj = integrate(params, options.horizon);
    cell.amplitude_ratio = decay_ratio(traj, params.output_index(0));
    cell.sustained = cell.amplitude_ratio >= 0.5;
    cell.agree = cell.sustained == cell.oscillatory;
    result.cells[i] = cell;
  });
  for (const auto& c : result.cells) result.diagonal = result.diagonal && c.agree;
  return result;
}

ExperimentReport to_report(const PhaseResult& result, const PhaseOptions& options) {
  ExperimentReport report;
  report.name = "phase-transition";
  report.replicates = 1;
  for (const auto& cell : result.cells) {
    const auto& v = cell.verdict;
    ReportCell rc;
    rc.parameters = {{"kappa", static_cast<double>(v.kappa)}, {"horizon", options.horizon}};
    rc.statistics = {exact("rho", v.rho), exact("threshold", v.threshold),
                     exact("max_real", v.max_real),
                     exact("unstable_roots", static_cast<double>(v.unstable_roots)),
                     exact("amplitude_ratio", cell.amplitude_ratio)};
    rc.labels = {{"verdict", cell.oscillatory ? "oscillatory" : "stable"},
                 {"trajectory", cell.sustained ? "sustained" : "damped"},
                 {"agree", cell.agree ? "yes" : "no"}};
    report.cells.push_back(std::move(rc));
  }
  report.passed = result.diagonal;
  if (!result.diagonal) report.flags.push_back("classification-mismatch");
  return report;
}

}  // namespace hawkes
