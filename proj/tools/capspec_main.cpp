#include "capspec/cli/commands.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

// CAPSPEC_THREADS caps the OpenMP worker count.
bool apply_thread_cap() {
  const char* env = std::getenv("CAPSPEC_THREADS");
  if (!env || !*env) return true;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) {
    std::cerr << "error: CAPSPEC_THREADS must be a positive integer, got '" << env << "'\n";
    return false;
  }
  omp_set_num_threads(static_cast<int>(n));
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace capspec::cli;

  CLI::App app{"capspec: spectral solver and verification harness for the capillary Muskat equation"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::string> out_dir;
  app.add_option("--out", out_dir, "Override the output directory");

  std::string config;
  std::string suite;
  std::string traj_dir;

  auto* sim = app.add_subcommand("simulate", "Evolve the configured datum");
  sim->add_option("config", config, "Config file")->required();
  auto* pic = app.add_subcommand("picard", "Solve the mild formulation by Picard iteration");
  pic->add_option("config", config, "Config file")->required();
  auto* ver = app.add_subcommand("verify", "Run verification checks");
  ver->add_option("suite", suite, "all, propagator, commutator, scaling, energy or support")->required();
  ver->add_option("config", config, "Config file")->required();
  auto* swp = app.add_subcommand("sweep", "Amplitude sweep for the decay threshold");
  swp->add_option("config", config, "Config file")->required();
  auto* plot = app.add_subcommand("plot-data", "Convert a trajectory trace into plot files");
  plot->add_option("dir", traj_dir, "Trajectory directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (!apply_thread_cap()) return kExitUsage;

  if (*sim) return cmd_simulate(config, out_dir, std::cout, std::cerr);
  if (*pic) return cmd_picard(config, out_dir, std::cout, std::cerr);
  if (*ver) return cmd_verify(suite, config, out_dir, std::cout, std::cerr);
  if (*swp) return cmd_sweep(config, out_dir, std::cout, std::cerr);
  if (*plot) return emit_plot_data(traj_dir, out_dir, std::cout, std::cerr);
  return kExitUsage;
}
