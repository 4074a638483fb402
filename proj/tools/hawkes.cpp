#include <iostream>

#include <CLI11.hpp>

#include "hawkes/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = hawkes::cli;
  CLI::App app{"Multi-class Hawkes networks with Erlang memory: limit system, exact simulation, "
               "diffusion approximation and experiments"};
  cli::Options options;
  app.add_option("command", options.command, "Subcommand")->required();
  app.add_option("--config", options.config_path, "JSON run configuration");
  app.add_option("--seed", options.seed, "Master seed (overrides the configuration)");
  app.add_option("--out", options.out_dir, "Output directory (default: $HAWKES_OUT_DIR or hawkes-out)");
  app.add_flag("--plots", options.plots, "Also write SVG plots");
  app.add_option("--threads", options.threads, "Worker threads for replicate batches")
      ->check(CLI::Range(1u, 1024u));
  app.footer(cli::usage());

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }
  return cli::run_command(options, std::cout, std::cerr);
}
