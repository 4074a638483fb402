#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hawkes/cascade.hpp"
#include "hawkes/kernel.hpp"
#include "hawkes/random.hpp"

namespace hawkes {

class PopulationSizes {
 public:
  PopulationSizes() = default;
  explicit PopulationSizes(std::vector<std::uint64_t> counts);

  /// Splits `total` as evenly as possible over `populations` classes.
  static PopulationSizes even(std::uint64_t total, std::size_t populations);

  std::size_t populations() const { return counts_.size(); }
  std::uint64_t operator[](std::size_t k) const { return counts_[k]; }
  std::uint64_t total() const { return total_; }
  double fraction(std::size_t k) const {
    return static_cast<double>(counts_[k]) / static_cast<double>(total_);
  }
  std::span<const std::uint64_t> counts() const { return counts_; }

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

struct SpikeEvent {
  double time = 0.0;
  std::uint32_t population = 0;
  std::uint32_t neuron = 0;

  friend bool operator==(const SpikeEvent&, const SpikeEvent&) = default;
};

/// Accepted spikes in time order.
struct EventLog {
  std::vector<SpikeEvent> events;

  std::size_t size() const { return events.size(); }
  /// Z^N_{k,i}(t) for every neuron, indexed [k][i].
  std::vector<std::vector<std::uint64_t>> neuron_counts(const PopulationSizes& sizes,
                                                        double t) const;
};

/// One thinning candidate as seen by a simulator.
struct CandidateRecord {
  double time = 0.0;
  std::uint32_t population = 0;
  double input = 0.0;  // intensity argument of the population's rate function
  bool accepted = false;
};

/// Cascade state plus averaged counts Z-bar_k, sampled on a regular grid.
/// Shared layout for PDMP and diffusion paths.
struct SampledPath {
  std::size_t kappa = 0;
  std::size_t populations = 0;
  std::vector<double> times;
  std::vector<double> states;  // row-major times.size() x kappa
  std::vector<double> zbar;    // row-major times.size() x populations

  std::size_t size() const { return times.size(); }
  std::span<const double> state(std::size_t i) const {
    return {states.data() + i * kappa, kappa};
  }
  std::vector<double> component(std::size_t c) const;
};

struct PdmpState {
  CascadeState x;
  std::vector<double> zbar;
  double time = 0.0;
};

struct SimulationOptions {
  double sample_dt = 0.0;  // 0 disables path sampling
  bool record_candidates = false;
  bool record_event_states = false;  // state just after each accepted event
};

struct PdmpResult {
  EventLog log;
  SampledPath path;
  PdmpState final_state;
  std::vector<std::uint64_t> first_neuron_counts;  // Z^N_{k,1} per population
  std::vector<CandidateRecord> candidates;
  std::vector<CascadeState> event_states;
  std::uint64_t candidate_count = 0;
};

/// Candidate stream shared by every thinning simulator. Per candidate it
/// draws, in order: the exponential gap at the dominating rate
/// sum_k N_k sup f_k, one uniform that picks the population (stacked
/// sub-intervals of width N_k sup_k) and the height z in [0, sup_k), and one
/// uniform for the neuron index.
class CandidateStream {
 public:
  struct Candidate {
    double time;
    std::uint32_t population;
    double height;
    std::uint32_t neuron;
  };

  CandidateStream(const PopulationSizes& sizes, std::span<const double> sups, std::uint64_t seed);

  double dominating_rate() const { return total_; }
  Candidate next();

 private:
  std::vector<double> cumulative_;
  std::vector<double> sups_;
  std::vector<std::uint64_t> counts_;
  double total_ = 0.0;
  double time_ = 0.0;
  CounterRng rng_;
};

/// Exact inter-jump flow: x^{k,l}(t+d) = e^{-nu d} sum_{m>=l} d^{m-l}/(m-l)! x^{k,m}(t).
void pdmp_flow(const CascadeParams& params, std::span<double> state, double dt);
/// Copying variant.
CascadeState pdmp_flowed(const CascadeParams& params, std::span<const double> state, double dt);

/// Exact thinning of the cascade PDMP started from zero.
PdmpResult simulate_pdmp(const CascadeParams& params, const PopulationSizes& sizes, double horizon,
                         std::uint64_t seed, const SimulationOptions& options = {});

/// h_{kl}(t) for a general kernel family.
using KernelFunction = std::function<double(std::size_t k, std::size_t l, double t)>;

/// History-based thinning: the intensity input is recomputed from the full
/// event history at every candidate (O(events) per candidate).
PdmpResult simulate_hawkes_general(const KernelFunction& kernel, std::size_t populations,
                                   std::span<const RateFunction> rates,
                                   const PopulationSizes& sizes, double horizon, std::uint64_t seed,
                                   const SimulationOptions& options = {});
PdmpResult simulate_hawkes_general(const KernelMatrix& kernels, std::span<const RateFunction> rates,
                                   const PopulationSizes& sizes, double horizon, std::uint64_t seed,
                                   const SimulationOptions& options = {});

struct CouplingOptions {
  /// Drive the finite system with the limit intensity too (degenerate coupling).
  bool limit_on_both_sides = false;
};

/// Neuron 1 of each population, coupled to its limit-process copy through a
/// shared Poisson random measure.
struct CouplingResult {
  double horizon = 0.0;
  std::vector<std::vector<double>> discordant_times;  // per population, ascending
  std::vector<double> sup_gap;  // sup_u |Zbar^N_{k,1}(u) - Z^N_{k,1}(u)|

  /// Delta^N_k(T): discordant acceptances up to T.
  double delta(std::size_t k, double t) const;
  double delta(std::size_t k) const { return delta(k, horizon); }
  double total_delta(double t) const;
  double total_sup_gap() const;
};

/// The limit intensity is f_k of the linearly interpolated x^{k,0} of `limit`.
CouplingResult simulate_coupled(const CascadeParams& params, const PopulationSizes& sizes,
                                double horizon, std::uint64_t seed, const LimitTrajectory& limit,
                                const CouplingOptions& options = {});

}  // namespace hawkes
