#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hawkes/cascade.hpp"
#include "hawkes/experiments.hpp"

namespace hawkes {

struct ScanNuConfig {
  double nu_min = 0.5;
  double nu_max = 1.6;
  double step = 0.01;
  std::optional<int> eta;  // overrides every eta of the template
};

struct ScanKappaConfig {
  std::optional<double> nu;  // overrides every nu of the template
  PhaseOptions phase;
};

/// Validated run configuration. Every field has a default except the
/// populations; see README for the schema.
struct RunConfig {
  CascadeParams params;
  std::vector<std::uint64_t> sizes;
  double horizon = 200.0;
  std::optional<double> dt;
  double sample_dt = 0.1;
  std::uint64_t seed = 1;
  std::optional<std::vector<double>> lipschitz;  // per population; defaults to the rates' own

  ScanNuConfig scan_nu;
  ScanKappaConfig scan_kappa;
  ChaosOptions chaos;
  CltOptions clt;
  WeakErrorOptions weak_error;
  TubeOptions tube;

  std::string canonical;  // sorted-key dump of the input document
  std::uint64_t hash = 0;  // FNV-1a of `canonical`

  std::vector<double> lipschitz_constants() const;
  /// Replaces the master seed everywhere it is used.
  void set_seed(std::uint64_t seed);
  void set_threads(unsigned threads);
};

/// Parses and validates a JSON document. Throws ConfigError listing every
/// violation; syntax errors carry line and column.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace hawkes
