#include "hawkes/pdmp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hawkes/error.hpp"

namespace hawkes {
namespace {

std::vector<double> rate_sups(std::span<const RateFunction> rates) {
  std::vector<double> sups;
  sups.reserve(rates.size());
  for (const auto& f : rates) {
    const double s = f.sup();
    if (!std::isfinite(s)) throw InvalidArgument("thinning requires bounded rates");
    sups.push_back(s);
  }
  return sups;
}

std::vector<RateFunction> rates_of(const CascadeParams& params) {
  std::vector<RateFunction> rates;
  for (const auto& p : params.all()) rates.push_back(p.rate);
  return rates;
}

void check_run(std::size_t populations, const PopulationSizes& sizes, double horizon) {
  if (sizes.populations() != populations) {
    throw InvalidArgument("population sizes do not match the number of populations");
  }
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw InvalidArgument("horizon must be finite and >= 0");
  }
}

// x^{k,0}(t_e + dt) given the block at t_e, without touching the state.
double block_output_after(const Population& p, const double* block, double dt) {
  double acc = 0.0;
  double term = 1.0;
  for (int m = 0; m <= p.eta; ++m) {
    acc += term * block[m];
    term *= dt / (m + 1);
  }
  return std::exp(-p.nu * dt) * acc;
}

// Index of the population whose top coordinate receives spikes of k.
std::size_t receiver_of(const CascadeParams& params, std::size_t k) {
  const std::size_t n = params.populations();
  return (k + n - 1) % n;
}

class PathSampler {
 public:
  PathSampler(const CascadeParams& params, double sample_dt, double horizon, SampledPath& out)
      : params_(params), dt_(sample_dt), horizon_(horizon), out_(out) {
    out_.kappa = params.kappa();
    out_.populations = params.populations();
  }

  // Emits grid samples with time < limit (or <= limit when inclusive).
  void emit_until(double limit, bool inclusive, std::span<const double> state, double state_time,
                  std::span<const double> zbar) {
    if (!(dt_ > 0.0)) return;
    for (;;) {
      const double ts = static_cast<double>(next_) * dt_;
      if (ts > horizon_ * (1.0 + 1e-12)) return;
      if (inclusive ? ts > limit : ts >= limit) return;
      const auto flowed = pdmp_flowed(params_, state, ts - state_time);
      out_.times.push_back(ts);
      out_.states.insert(out_.states.end(), flowed.begin(), flowed.end());
      out_.zbar.insert(out_.zbar.end(), zbar.begin(), zbar.end());
      ++next_;
    }
  }

 private:
  const CascadeParams& params_;
  double dt_;
  double horizon_;
  SampledPath& out_;
  std::uint64_t next_ = 0;
};

}  // namespace

PopulationSizes::PopulationSizes(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw InvalidArgument("need at least one population size");
  for (auto c : counts_) {
    if (c < 1) throw InvalidArgument("population sizes must be >= 1");
    if (c > std::numeric_limits<std::uint32_t>::max()) {
      throw InvalidArgument("population size exceeds 2^32 - 1");
    }
    total_ += c;
  }
}

PopulationSizes PopulationSizes::even(std::uint64_t total, std::size_t populations) {
  if (populations == 0 || total < populations) {
    throw InvalidArgument("even split needs total >= number of populations");
  }
  std::vector<std::uint64_t> counts(populations, total / populations);
  for (std::size_t k = 0; k < total % populations; ++k) ++counts[k];
  return PopulationSizes(std::move(counts));
}

std::vector<std::vector<std::uint64_t>> EventLog::neuron_counts(const PopulationSizes& sizes,
                                                                double t) const {
  std::vector<std::vector<std::uint64_t>> counts(sizes.populations());
  for (std::size_t k = 0; k < sizes.populations(); ++k) counts[k].assign(sizes[k], 0);
  for (const auto& e : events) {
    if (e.time > t) break;
    ++counts[e.population][e.neuron];
  }
  return counts;
}

std::vector<double> SampledPath::component(std::size_t c) const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = states[i * kappa + c];
  return out;
}

CandidateStream::CandidateStream(const PopulationSizes& sizes, std::span<const double> sups,
                                 std::uint64_t seed)
    : sups_(sups.begin(), sups.end()), counts_(sizes.counts().begin(), sizes.counts().end()),
      rng_(seed) {
  cumulative_.reserve(sups.size());
  for (std::size_t k = 0; k < sups.size(); ++k) {
    total_ += static_cast<double>(counts_[k]) * sups_[k];
    cumulative_.push_back(total_);
  }
}

CandidateStream::Candidate CandidateStream::next() {
  if (!(total_ > 0.0)) {
    return {std::numeric_limits<double>::infinity(), 0, 0.0, 0};
  }
  time_ += rng_.exponential(total_);
  const double x = rng_.uniform() * total_;
  std::size_t k = 0;
  while (k + 1 < cumulative_.size() && x >= cumulative_[k]) ++k;
  while (sups_[k] == 0.0 && k + 1 < cumulative_.size()) ++k;
  const double start = k == 0 ? 0.0 : cumulative_[k - 1];
  double height = (x - start) / static_cast<double>(counts_[k]);
  height = std::clamp(height, 0.0, std::nextafter(sups_[k], 0.0));
  const auto neuron = static_cast<std::uint32_t>(rng_.below(counts_[k]));
  return {time_, static_cast<std::uint32_t>(k), height, neuron};
}

void pdmp_flow(const CascadeParams& params, std::span<double> state, double dt) {
  if (state.size() != params.kappa()) throw InvalidArgument("pdmp_flow: bad state length");
  if (!(dt >= 0.0)) throw InvalidArgument("pdmp_flow: negative time step");
  if (dt == 0.0) return;
  double powers[64];
  for (std::size_t k = 0; k < params.populations(); ++k) {
    const auto& p = params.population(k);
    const auto eta = static_cast<std::size_t>(p.eta);
    double* block = state.data() + params.index(k, 0);
    const double decay = std::exp(-p.nu * dt);
    if (eta < 64) {
      powers[0] = 1.0;
      for (std::size_t j = 1; j <= eta; ++j) powers[j] = powers[j - 1] * dt / static_cast<double>(j);
      // Ascending l reads only coordinates m >= l, which are still unflowed.
      for (std::size_t l = 0; l <= eta; ++l) {
        double acc = 0.0;
        for (std::size_t m = l; m <= eta; ++m) acc += powers[m - l] * block[m];
        block[l] = decay * acc;
      }
    } else {
      for (std::size_t l = 0; l <= eta; ++l) {
        double acc = 0.0;
        double term = 1.0;
        for (std::size_t m = l; m <= eta; ++m) {
          acc += term * block[m];
          term *= dt / static_cast<double>(m - l + 1);
        }
        block[l] = decay * acc;
      }
    }
  }
}

CascadeState pdmp_flowed(const CascadeParams& params, std::span<const double> state, double dt) {
  CascadeState out(state.begin(), state.end());
  pdmp_flow(params, out, dt);
  return out;
}

PdmpResult simulate_pdmp(const CascadeParams& params, const PopulationSizes& sizes, double horizon,
                         std::uint64_t seed, const SimulationOptions& options) {
  const std::size_t n = params.populations();
  check_run(n, sizes, horizon);
  const auto rates = rates_of(params);
  CandidateStream stream(sizes, rate_sups(rates), seed);

  PdmpResult result;
  result.first_neuron_counts.assign(n, 0);
  CascadeState x(params.kappa(), 0.0);
  std::vector<double> zbar(n, 0.0);
  double state_time = 0.0;
  PathSampler sampler(params, options.sample_dt, horizon, result.path);

  for (;;) {
    const auto c = stream.next();
    if (c.time > horizon) break;
    ++result.candidate_count;
    sampler.emit_until(c.time, false, x, state_time, zbar);

    const std::size_t k = c.population;
    const auto& pop = params.population(k);
    const double input =
        block_output_after(pop, x.data() + params.index(k, 0), c.time - state_time);
    const bool accepted = c.height < pop.rate(input);
    if (options.record_candidates) {
      result.candidates.push_back({c.time, c.population, input, accepted});
    }
    if (!accepted) continue;

    pdmp_flow(params, x, c.time - state_time);
    state_time = c.time;
    const std::size_t receiver = receiver_of(params, k);
    const double inv_size = 1.0 / static_cast<double>(sizes[k]);
    x[params.top_index(receiver)] += params.population(receiver).sign * inv_size;
    zbar[k] += inv_size;
    result.log.events.push_back({c.time, c.population, c.neuron});
    if (c.neuron == 0) ++result.first_neuron_counts[k];
    if (options.record_event_states) result.event_states.push_back(x);
  }
  sampler.emit_until(horizon, true, x, state_time, zbar);

  pdmp_flow(params, x, horizon - state_time);
  result.final_state = {std::move(x), std::move(zbar), horizon};
  return result;
}

PdmpResult simulate_hawkes_general(const KernelFunction& kernel, std::size_t populations,
                                   std::span<const RateFunction> rates,
                                   const PopulationSizes& sizes, double horizon, std::uint64_t seed,
                                   const SimulationOptions& options) {
  check_run(populations, sizes, horizon);
  if (rates.size() != populations) throw InvalidArgument("need one rate function per population");
  CandidateStream stream(sizes, rate_sups(rates), seed);

  PdmpResult result;
  result.first_neuron_counts.assign(populations, 0);
  std::vector<std::vector<double>> history(populations);
  std::vector<double> zbar(populations, 0.0);

  for (;;) {
    const auto c = stream.next();
    if (c.time > horizon) break;
    ++result.candidate_count;
    const std::size_t k = c.population;
    double input = 0.0;
    for (std::size_t l = 0; l < populations; ++l) {
      double acc = 0.0;
      for (double s : history[l]) acc += kernel(k, l, c.time - s);
      input += acc / static_cast<double>(sizes[l]);
    }
    const bool accepted = c.height < rates[k](input);
    if (options.record_candidates) {
      result.candidates.push_back({c.time, c.population, input, accepted});
    }
    if (!accepted) continue;
    history[k].push_back(c.time);
    zbar[k] += 1.0 / static_cast<double>(sizes[k]);
    result.log.events.push_back({c.time, c.population, c.neuron});
    if (c.neuron == 0) ++result.first_neuron_counts[k];
  }
  result.final_state.zbar = std::move(zbar);
  result.final_state.time = horizon;
  return result;
}

PdmpResult simulate_hawkes_general(const KernelMatrix& kernels, std::span<const RateFunction> rates,
                                   const PopulationSizes& sizes, double horizon, std::uint64_t seed,
                                   const SimulationOptions& options) {
  auto h = [&kernels](std::size_t k, std::size_t l, double t) {
    const auto& entry = kernels.at(k, l);
    return entry ? erlang_eval(*entry, t) : 0.0;
  };
  return simulate_hawkes_general(h, kernels.size(), rates, sizes, horizon, seed, options);
}

double CouplingResult::delta(std::size_t k, double t) const {
  const auto& times = discordant_times.at(k);
  return static_cast<double>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
}

double CouplingResult::total_delta(double t) const {
  double total = 0.0;
  for (std::size_t k = 0; k < discordant_times.size(); ++k) total += delta(k, t);
  return total;
}

double CouplingResult::total_sup_gap() const {
  return std::accumulate(sup_gap.begin(), sup_gap.end(), 0.0);
}

CouplingResult simulate_coupled(const CascadeParams& params, const PopulationSizes& sizes,
                                double horizon, std::uint64_t seed, const LimitTrajectory& limit,
                                const CouplingOptions& options) {
  const std::size_t n = params.populations();
  check_run(n, sizes, horizon);
  if (limit.kappa != params.kappa() || limit.size() < 2) {
    throw InvalidArgument("simulate_coupled: limit trajectory does not match the parameters");
  }
  if (limit.times.back() < horizon * (1.0 - 1e-12)) {
    throw InvalidArgument("simulate_coupled: m-grid shorter than horizon");
  }
  const auto rates = rates_of(params);
  CandidateStream stream(sizes, rate_sups(rates), seed);

  CouplingResult result;
  result.horizon = horizon;
  result.discordant_times.resize(n);
  result.sup_gap.assign(n, 0.0);
  std::vector<std::int64_t> finite_count(n, 0);
  std::vector<std::int64_t> limit_count(n, 0);
  CascadeState x(params.kappa(), 0.0);
  double state_time = 0.0;

  for (;;) {
    const auto c = stream.next();
    if (c.time > horizon) break;
    const std::size_t k = c.population;
    const auto& pop = params.population(k);

    double limit_rate = 0.0;
    const bool tagged = c.neuron == 0;
    if (tagged || options.limit_on_both_sides) {
      limit_rate = pop.rate(limit.interpolate(params.output_index(k), c.time));
    }
    double finite_rate = limit_rate;
    if (!options.limit_on_both_sides) {
      finite_rate =
          pop.rate(block_output_after(pop, x.data() + params.index(k, 0), c.time - state_time));
    }
    const bool finite_accept = c.height < finite_rate;
    if (tagged) {
      const bool limit_accept = c.height < limit_rate;
      if (finite_accept) ++finite_count[k];
      if (limit_accept) ++limit_count[k];
      if (finite_accept != limit_accept) {
        result.discordant_times[k].push_back(c.time);
        result.sup_gap[k] = std::max(
            result.sup_gap[k], static_cast<double>(std::abs(limit_count[k] - finite_count[k])));
      }
    }
    if (!finite_accept) continue;
    pdmp_flow(params, x, c.time - state_time);
    state_time = c.time;
    const std::size_t receiver = receiver_of(params, k);
    x[params.top_index(receiver)] +=
        params.population(receiver).sign / static_cast<double>(sizes[k]);
  }
  return result;
}

}  // namespace hawkes
