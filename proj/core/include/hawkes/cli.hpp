#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hawkes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitComputation = 3;

struct Options {
  std::string command;
  std::string config_path;  // empty: built-in two-population default
  std::optional<std::uint64_t> seed;
  std::string out_dir;  // empty: HAWKES_OUT_DIR or "hawkes-out"
  bool plots = false;
  unsigned threads = 1;
};

const std::vector<std::string>& subcommands();
std::string usage();

/// Built-in configuration (kappa = 7 two-population network).
std::string default_config_text();

/// Runs one subcommand. Progress goes to `out`; failures are reported on `err`
/// as a single JSON object. Returns the process exit status.
int run_command(const Options& options, std::ostream& out, std::ostream& err);

}  // namespace hawkes::cli
