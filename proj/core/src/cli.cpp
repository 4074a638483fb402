#include "hawkes/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "hawkes/config.hpp"
#include "hawkes/diffusion.hpp"
#include "hawkes/error.hpp"
#include "hawkes/experiments.hpp"
#include "hawkes/io.hpp"
#include "hawkes/random.hpp"

#ifndef HAWKES_VERSION
#define HAWKES_VERSION "0.0.0"
#endif

namespace hawkes::cli {
namespace {

using nlohmann::json;

json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

json array_of(std::span<const double> xs) {
  json a = json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<std::string> state_columns(const CascadeParams& params) {
  std::vector<std::string> cols;
  for (std::size_t k = 0; k < params.populations(); ++k) {
    for (int l = 0; l <= params.population(k).eta; ++l) {
      cols.push_back("x" + std::to_string(k + 1) + "_" + std::to_string(l));
    }
  }
  return cols;
}

io::Table trajectory_table(const CascadeParams& params, std::span<const double> times,
                           std::span<const double> states, std::span<const double> extra,
                           const std::string& extra_prefix, std::size_t stride) {
  std::vector<std::string> header{"time"};
  for (auto& c : state_columns(params)) header.push_back(std::move(c));
  const std::size_t n = params.populations(), kappa = params.kappa();
  for (std::size_t k = 0; k < n; ++k) header.push_back(extra_prefix + std::to_string(k + 1));
  io::Table table(std::move(header));
  for (std::size_t i = 0; i < times.size(); i += stride) {
    std::vector<double> row{times[i]};
    row.insert(row.end(), states.begin() + static_cast<std::ptrdiff_t>(i * kappa),
               states.begin() + static_cast<std::ptrdiff_t>((i + 1) * kappa));
    row.insert(row.end(), extra.begin() + static_cast<std::ptrdiff_t>(i * n),
               extra.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
    table.add_row(row);
  }
  return table;
}

io::Table path_table(const CascadeParams& params, const SampledPath& path) {
  return trajectory_table(params, path.times, path.states, path.zbar, "zbar", 1);
}

std::size_t stride_for(double sample_dt, double step) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(sample_dt / step)));
}

io::Series component_series(const std::string& label, std::span<const double> times,
                            std::span<const double> states, std::size_t kappa, std::size_t c) {
  io::Series s{label, {}, {}};
  for (std::size_t i = 0; i < times.size(); ++i) {
    s.x.push_back(times[i]);
    s.y.push_back(states[i * kappa + c]);
  }
  return s;
}

json stats_json(const std::vector<Statistic>& stats) {
  json a = json::array();
  for (const auto& s : stats) {
    a.push_back({{"name", s.name}, {"value", number(s.value)}, {"std_error", number(s.std_error)},
                 {"count", s.count}});
  }
  return a;
}

json report_json(const ExperimentReport& report) {
  json j;
  j["experiment"] = report.name;
  j["seed"] = report.seed;
  j["replicates"] = report.replicates;
  j["passed"] = report.passed;
  j["flags"] = report.flags;
  j["summary"] = stats_json(report.summary);
  json cells = json::array();
  for (const auto& c : report.cells) {
    json cell;
    json params = json::object();
    for (const auto& [k, v] : c.parameters) params[k] = number(v);
    json labels = json::object();
    for (const auto& [k, v] : c.labels) labels[k] = v;
    cell["parameters"] = params;
    cell["labels"] = labels;
    cell["statistics"] = stats_json(c.statistics);
    cells.push_back(cell);
  }
  j["cells"] = cells;
  return j;
}

json criticality_json(const CriticalityReport& c) {
  json j;
  json rows = json::array();
  for (std::size_t i = 0; i < c.offspring.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < c.offspring.cols(); ++k) row.push_back(number(c.offspring(i, k)));
    rows.push_back(row);
  }
  j["offspring"] = rows;
  j["spectral_radius"] = number(c.radius);
  j["class"] = to_string(c.regime);
  j["alpha0"] = c.alpha0 ? number(*c.alpha0) : json(nullptr);
  return j;
}

json stability_json(const CascadeParams& params, const StabilityReport& r,
                    const CriticalityReport& crit) {
  json j;
  j["kappa"] = params.kappa();
  j["equilibrium"] = array_of(r.equilibrium);
  j["rho"] = number(r.rho);
  json roots = json::array();
  for (const auto& z : r.roots) roots.push_back({number(z.real()), number(z.imag())});
  j["roots"] = roots;
  j["unstable_roots"] = r.unstable_roots;
  j["max_real"] = number(r.max_real);
  j["oscillatory"] = r.oscillatory;
  j["unstable2"] = r.unstable2 ? json(*r.unstable2) : json(nullptr);
  j["threshold"] = r.threshold ? number(*r.threshold) : json(nullptr);
  j["omega"] = r.omega ? number(*r.omega) : json(nullptr);
  j["period"] = r.period ? number(*r.period) : json(nullptr);
  j["criticality"] = criticality_json(crit);
  return j;
}

struct Context {
  RunConfig config;
  io::OutputSet outputs;
  bool plots = false;
  std::ostream& out;
};

double ode_step(const RunConfig& cfg) { return cfg.dt.value_or(default_dt(cfg.params)); }

// --- limit -----------------------------------------------------------------

void write_limit(Context& ctx, const std::string& stem) {
  const auto& cfg = ctx.config;
  const auto traj = integrate(cfg.params, cfg.horizon, ode_step(cfg));
  const double h = traj.size() > 1 ? traj.times[1] - traj.times[0] : ode_step(cfg);
  ctx.outputs.write(stem + ".csv", trajectory_table(cfg.params, traj.times, traj.states, traj.means,
                                                    "m", stride_for(cfg.sample_dt, h))
                                       .to_csv());
  json j;
  j["kappa"] = cfg.params.kappa();
  j["horizon"] = cfg.horizon;
  j["step"] = h;
  j["final_state"] = array_of(traj.state(traj.size() - 1));
  std::vector<double> means;
  for (std::size_t k = 0; k < cfg.params.populations(); ++k) means.push_back(traj.mean(traj.size() - 1, k));
  j["final_means"] = array_of(means);
  try {
    j["equilibrium"] = array_of(find_equilibrium(cfg.params));
  } catch (const InvalidArgument&) {
    j["equilibrium"] = nullptr;
  }
  try {
    j["measured_period"] = measure_period(traj, cfg.params.output_index(0));
  } catch (const ComputationError&) {
    j["measured_period"] = nullptr;
  }
  ctx.outputs.write(stem + ".json", dump(j));
  if (ctx.plots) {
    io::Chart chart{"Limit system", "time", "x^{k,0}", {}, false, false, false, {}};
    for (std::size_t k = 0; k < cfg.params.populations(); ++k) {
      chart.series.push_back(component_series("x" + std::to_string(k + 1) + "_0", traj.times,
                                              traj.states, traj.kappa, cfg.params.output_index(k)));
    }
    if (j["equilibrium"].is_array()) {
      for (std::size_t k = 0; k < cfg.params.populations(); ++k) {
        chart.reference_y.push_back(j["equilibrium"][cfg.params.output_index(k)].get<double>());
      }
    }
    ctx.outputs.write(stem + ".svg", io::svg_chart(chart));
  }
  ctx.out << "limit: integrated to t=" << cfg.horizon << " (" << traj.size() << " steps)\n";
}

// --- stability ---------------------------------------------------------------

void write_stability(Context& ctx) {
  const auto& cfg = ctx.config;
  const auto report = check_oscillation(cfg.params);
  const auto crit = classify_criticality(cfg.params.kernels(), cfg.lipschitz_constants());
  ctx.outputs.write("stability.json", dump(stability_json(cfg.params, report, crit)));
  ctx.out << "stability: rho=" << report.rho << " max Re=" << report.max_real
          << (report.oscillatory ? " oscillatory" : " stable") << "\n";
}

// --- scans -------------------------------------------------------------------

CascadeParams scan_nu_template(const RunConfig& cfg) {
  return cfg.scan_nu.eta ? cfg.params.with_eta(*cfg.scan_nu.eta) : cfg.params;
}

void write_scan_nu(Context& ctx, const std::string& stem) {
  const auto& cfg = ctx.config;
  const auto scan = hopf_scan(scan_nu_template(cfg), cfg.scan_nu.nu_min, cfg.scan_nu.nu_max,
                              cfg.scan_nu.step);
  io::Table table({"parameter", "maxRe", "verdict", "rho", "period"});
  for (const auto& s : scan.samples) {
    table.add_row({io::format_number(s.parameter), io::format_number(s.max_real),
                   s.oscillatory ? "oscillatory" : "stable", io::format_number(s.rho),
                   s.period ? io::format_number(*s.period) : ""});
  }
  ctx.outputs.write(stem + ".csv", table.to_csv());
  json points = json::array();
  for (const auto& p : scan.points) points.push_back({{"nu", p.nu}, {"onset", p.onset}});
  json j{{"hopf_points", points},
         {"nu_min", cfg.scan_nu.nu_min},
         {"nu_max", cfg.scan_nu.nu_max},
         {"step", cfg.scan_nu.step},
         {"kappa", scan_nu_template(cfg).kappa()}};
  ctx.outputs.write(stem + ".json", dump(j));
  if (ctx.plots) {
    io::Series s{"max Re(lambda)", {}, {}};
    for (const auto& sample : scan.samples) {
      s.x.push_back(sample.parameter);
      s.y.push_back(sample.max_real);
    }
    ctx.outputs.write(stem + ".svg", io::svg_chart({"Hopf scan", "nu", "max Re(lambda)", {s},
                                                    false, false, false, {0.0}}));
  }
  ctx.out << "scan-nu: " << scan.points.size() << " Hopf point(s)";
  for (const auto& p : scan.points) ctx.out << " " << p.nu;
  ctx.out << "\n";
}

void write_scan_kappa(Context& ctx, const std::string& stem) {
  const auto& cfg = ctx.config;
  const auto templ = cfg.scan_kappa.nu ? cfg.params.with_nu(*cfg.scan_kappa.nu) : cfg.params;
  const auto result = phase_transition_sweep(templ, cfg.scan_kappa.phase);
  io::Table table({"kappa", "eta", "rho", "threshold", "maxRe", "unstable_roots", "verdict",
                   "amplitude_ratio", "trajectory", "agree", "period"});
  for (const auto& c : result.cells) {
    const auto& v = c.verdict;
    table.add_row({std::to_string(v.kappa), std::to_string(v.eta), io::format_number(v.rho),
                   io::format_number(v.threshold), io::format_number(v.max_real),
                   std::to_string(v.unstable_roots), c.oscillatory ? "oscillatory" : "stable",
                   io::format_number(c.amplitude_ratio), c.sustained ? "sustained" : "damped",
                   c.agree ? "yes" : "no", v.period ? io::format_number(*v.period) : ""});
  }
  ctx.outputs.write(stem + ".csv", table.to_csv());
  ctx.outputs.write(stem + ".json", dump(report_json(to_report(result, cfg.scan_kappa.phase))));
  if (ctx.plots) {
    io::Series margin{"|rho| - threshold", {}, {}};
    io::Series ratio{"amplitude ratio", {}, {}};
    for (const auto& c : result.cells) {
      margin.x.push_back(static_cast<double>(c.verdict.kappa));
      margin.y.push_back(std::abs(c.verdict.rho) - c.verdict.threshold);
      ratio.x.push_back(static_cast<double>(c.verdict.kappa));
      ratio.y.push_back(c.amplitude_ratio);
    }
    ctx.outputs.write(stem + ".svg", io::svg_chart({"Memory-order sweep", "kappa", "value",
                                                    {margin, ratio}, false, false, true, {0.0, 0.5}}));
  }
  ctx.out << "scan-kappa: oscillatory for kappa in {";
  bool first = true;
  for (const auto& c : result.cells) {
    if (!c.oscillatory) continue;
    ctx.out << (first ? "" : ",") << c.verdict.kappa;
    first = false;
  }
  ctx.out << "}" << (result.diagonal ? "" : " (trajectory classification disagrees)") << "\n";
}

// --- simulations ---------------------------------------------------------------

void write_pdmp(Context& ctx, const std::string& stem) {
  const auto& cfg = ctx.config;
  const PopulationSizes sizes(cfg.sizes);
  SimulationOptions opts;
  opts.sample_dt = cfg.sample_dt;
  const auto seed = derive_seed(cfg.seed, "pdmp", 0);
  const auto result = simulate_pdmp(cfg.params, sizes, cfg.horizon, seed, opts);
  io::Table events({"time", "population", "neuron"});
  for (const auto& e : result.log.events) {
    events.add_row({io::format_number(e.time), std::to_string(e.population + 1),
                    std::to_string(e.neuron + 1)});
  }
  ctx.outputs.write(stem + "_events.csv", events.to_csv());
  ctx.outputs.write(stem + "_trajectory.csv", path_table(cfg.params, result.path).to_csv());
  json j;
  j["events"] = result.log.size();
  j["candidates"] = result.candidate_count;
  j["sizes"] = cfg.sizes;
  j["horizon"] = cfg.horizon;
  j["final_state"] = array_of(result.final_state.x);
  j["final_zbar"] = array_of(result.final_state.zbar);
  j["first_neuron_counts"] = result.first_neuron_counts;
  ctx.outputs.write(stem + ".json", dump(j));
  if (ctx.plots) {
    io::Chart chart{"PDMP, N = " + std::to_string(sizes.total()), "time", "X^{k,0}", {}, false,
                    false, false, {}};
    for (std::size_t k = 0; k < cfg.params.populations(); ++k) {
      chart.series.push_back(component_series("X" + std::to_string(k + 1) + "_0", result.path.times,
                                              result.path.states, result.path.kappa,
                                              cfg.params.output_index(k)));
    }
    ctx.outputs.write(stem + ".svg", io::svg_chart(chart));
  }
  ctx.out << "simulate-pdmp: " << result.log.size() << " events from " << result.candidate_count
          << " candidates\n";
}

void write_diffusion(Context& ctx, const std::string& stem) {
  const auto& cfg = ctx.config;
  DiffusionParams dp{cfg.params, PopulationSizes(cfg.sizes), cfg.dt.value_or(1e-3), 1.0,
                     std::nullopt};
  const auto path = euler_maruyama(dp, cfg.horizon, derive_seed(cfg.seed, "diffusion", 0),
                                   stride_for(cfg.sample_dt, dp.dt));
  ctx.outputs.write(stem + "_trajectory.csv", path_table(cfg.params, path).to_csv());
  json j;
  j["sizes"] = cfg.sizes;
  j["horizon"] = cfg.horizon;
  j["dt"] = dp.dt;
  j["final_state"] = array_of(path.state(path.size() - 1));
  if (path.size() >= 100) {
    const auto diag = lyapunov_drift_estimate(path, LyapunovConfig::for_params(cfg.params));
    j["lyapunov"] = {{"c_hat", number(diag.c_hat)},
                     {"d_hat", number(diag.d_hat)},
                     {"fraction_in_compact", number(diag.fraction_in_compact)},
                     {"g_quantile90", number(diag.g_quantile90)},
                     {"excursions", diag.excursions},
                     {"mean_return_time", number(diag.mean_return_time)},
                     {"return_rate", diag.return_rate ? number(*diag.return_rate) : json(nullptr)}};
  } else {
    j["lyapunov"] = nullptr;
  }
  ctx.outputs.write(stem + ".json", dump(j));
  if (ctx.plots) {
    const auto limit = integrate(cfg.params, cfg.horizon);
    io::Chart chart{"Diffusion vs limit", "time", "x^{1,0}", {}, false, false, false, {}};
    chart.series.push_back(component_series("diffusion", path.times, path.states, path.kappa,
                                            cfg.params.output_index(0)));
    chart.series.push_back(component_series("limit", limit.times, limit.states, limit.kappa,
                                            cfg.params.output_index(0)));
    ctx.outputs.write(stem + ".svg", io::svg_chart(chart));
  }
  ctx.out << "simulate-diffusion: " << path.size() << " samples\n";
}

// --- experiments --------------------------------------------------------------

void write_chaos(Context& ctx) {
  const auto& cfg = ctx.config;
  const auto result = chaos_rate_experiment(cfg.params, cfg.chaos);
  io::Table table({"N", "replicates", "delta_mean", "delta_se", "sup_gap_mean", "sup_gap_se"});
  for (const auto& c : result.cells) {
    table.add_row({std::to_string(c.total), std::to_string(c.delta.count),
                   io::format_number(c.delta.mean), io::format_number(c.delta.std_error),
                   io::format_number(c.sup_gap.mean), io::format_number(c.sup_gap.std_error)});
  }
  ctx.outputs.write("chaos.csv", table.to_csv());
  ctx.outputs.write("chaos.json", dump(report_json(to_report(result, cfg.chaos))));
  if (ctx.plots) {
    io::Series s{"E[Delta]", {}, {}};
    for (const auto& c : result.cells) {
      s.x.push_back(static_cast<double>(c.total));
      s.y.push_back(c.delta.mean);
    }
    ctx.outputs.write("chaos.svg", io::svg_chart({"Coupling discrepancy", "N", "E[Delta]", {s},
                                                  true, true, true, {}}));
  }
  ctx.out << "chaos: ";
  if (result.fit) {
    ctx.out << "slope " << result.fit->slope << " +- " << result.fit->slope_se << "\n";
  } else {
    ctx.out << "degenerate fit\n";
  }
}

void write_clt(Context& ctx) {
  const auto& cfg = ctx.config;
  const auto result = clt_experiment(cfg.params, cfg.clt);
  std::vector<std::string> header{"replicate"};
  for (std::size_t k = 0; k < result.standardized.size(); ++k) {
    header.push_back("z" + std::to_string(k + 1));
  }
  io::Table table(std::move(header));
  for (std::size_t r = 0; r < cfg.clt.replicates; ++r) {
    std::vector<double> row{static_cast<double>(r)};
    for (const auto& col : result.standardized) row.push_back(col[r]);
    table.add_row(row);
  }
  ctx.outputs.write("clt.csv", table.to_csv());
  ctx.outputs.write("clt.json", dump(report_json(to_report(result, cfg.clt))));
  ctx.out << "clt:";
  for (std::size_t k = 0; k < result.moments.size(); ++k) {
    ctx.out << " pop" << k + 1 << " mean=" << result.moments[k].mean
            << " var=" << result.moments[k].variance;
  }
  if (result.correlation) ctx.out << " corr=" << *result.correlation;
  ctx.out << "\n";
}

void write_weak_error(Context& ctx) {
  const auto& cfg = ctx.config;
  const auto result = weak_error_experiment(cfg.params, cfg.weak_error);
  io::Table table({"N", "function", "pdmp_mean", "pdmp_se", "diffusion_mean", "diffusion_se",
                   "gap", "ci95_half_width"});
  for (const auto& c : result.cells) {
    table.add_row({std::to_string(c.total), c.function, io::format_number(c.pdmp.mean),
                   io::format_number(c.pdmp.std_error), io::format_number(c.diffusion.mean),
                   io::format_number(c.diffusion.std_error), io::format_number(c.gap),
                   io::format_number(c.half_width)});
  }
  ctx.outputs.write("weak_error.csv", table.to_csv());
  ctx.outputs.write("weak_error.json", dump(report_json(to_report(result, cfg.weak_error))));
  ctx.out << "weak-error: " << (result.conclusive ? "decreasing for every function" : "inconclusive")
          << "\n";
}

void write_tube(Context& ctx) {
  const auto& cfg = ctx.config;
  const auto result = tube_occupancy(cfg.params, cfg.tube);
  io::Table table({"time", "distance"});
  for (std::size_t i = 0; i < result.times.size(); ++i) {
    table.add_row(std::vector<double>{result.times[i], result.distances[i]});
  }
  ctx.outputs.write("tube.csv", table.to_csv());
  ctx.outputs.write("tube.json", dump(report_json(to_report(result, cfg.tube))));
  if (ctx.plots) {
    std::vector<double> radii;
    for (const auto& c : result.cells) radii.push_back(c.radius);
    ctx.outputs.write("tube.svg",
                      io::svg_chart({"Distance to the limit orbit", "time", "distance",
                                     {{"distance", result.times, result.distances}}, false, false,
                                     false, radii}));
  }
  ctx.out << "tube:";
  for (const auto& c : result.cells) ctx.out << " eps=" << c.epsilon << " occupancy=" << c.occupancy;
  ctx.out << "\n";
}

void write_figures(Context& ctx) {
  write_limit(ctx, "fig1_limit");
  write_pdmp(ctx, "fig1_pdmp");
  write_diffusion(ctx, "fig2_diffusion");
  write_scan_kappa(ctx, "fig3_left");
  write_scan_nu(ctx, "fig3_right");
}

json error_json(const std::string& kind, const std::string& message, int code,
                const std::vector<std::string>& violations = {}) {
  json j;
  j["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code},
                {"violations", violations}};
  return j;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{
      "limit", "stability", "scan-nu", "scan-kappa", "simulate-pdmp", "simulate-diffusion",
      "chaos", "clt",       "weak-error", "tube",     "figures"};
  return names;
}

std::string usage() {
  std::string text =
      "usage: hawkes <subcommand> [--config <path>] [--seed <u64>] [--out <dir>] [--plots] "
      "[--threads <n>]\n\nsubcommands:\n";
  for (const auto& s : subcommands()) text += "  " + s + "\n";
  return text;
}

std::string default_config_text() {
  return R"({
  "populations": [
    {"eta": 3, "nu": 1.0, "c": -1, "rate": "paper_f1"},
    {"eta": 2, "nu": 1.0, "c": 1, "rate": "paper_f2"}
  ],
  "sizes": [20, 20],
  "horizon": 200,
  "sample_dt": 0.1,
  "seed": 1,
  "scan_nu": {"nu_min": 0.5, "nu_max": 1.6, "step": 0.01, "eta": 3},
  "scan_kappa": {"nu": 0.8, "kappas": [4, 8, 12, 16, 20, 24], "horizon": 6000}
}
)";
}

int run_command(const Options& options, std::ostream& out, std::ostream& err) {
  const auto& names = subcommands();
  if (std::find(names.begin(), names.end(), options.command) == names.end()) {
    err << usage();
    err << error_json("usage", "unknown subcommand '" + options.command + "'", kExitUsage).dump()
        << "\n";
    return kExitUsage;
  }
  const auto started = std::chrono::system_clock::now();
  const auto clock_start = std::chrono::steady_clock::now();
  try {
    auto config = options.config_path.empty() ? parse_config(default_config_text())
                                              : load_config(options.config_path);
    if (options.seed) config.set_seed(*options.seed);
    config.set_threads(std::max(1u, options.threads));
    Context ctx{std::move(config), io::OutputSet(io::resolve_output_dir(options.out_dir)),
                options.plots, out};

    const auto& cmd = options.command;
    if (cmd == "limit") write_limit(ctx, "limit");
    else if (cmd == "stability") write_stability(ctx);
    else if (cmd == "scan-nu") write_scan_nu(ctx, "scan_nu");
    else if (cmd == "scan-kappa") write_scan_kappa(ctx, "scan_kappa");
    else if (cmd == "simulate-pdmp") write_pdmp(ctx, "pdmp");
    else if (cmd == "simulate-diffusion") write_diffusion(ctx, "diffusion");
    else if (cmd == "chaos") write_chaos(ctx);
    else if (cmd == "clt") write_clt(ctx);
    else if (cmd == "weak-error") write_weak_error(ctx);
    else if (cmd == "tube") write_tube(ctx);
    else write_figures(ctx);

    io::Manifest manifest;
    manifest.command = cmd;
    manifest.config_hash = ctx.config.hash;
    manifest.seed = ctx.config.seed;
    manifest.version = HAWKES_VERSION;
    manifest.started = io::utc_timestamp(started);
    manifest.finished = io::utc_timestamp(std::chrono::system_clock::now());
    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
    manifest.outputs = ctx.outputs.files();
    ctx.outputs.write("manifest.json", io::manifest_json(manifest));
    return kExitOk;
  } catch (const ConfigError& e) {
    err << error_json("config", e.what(), kExitConfig, e.violations()).dump() << "\n";
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    err << error_json("config", e.what(), kExitConfig).dump() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << error_json("computation", e.what(), kExitComputation).dump() << "\n";
    return kExitComputation;
  }
}

}  // namespace hawkes::cli
