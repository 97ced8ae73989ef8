#pragma once

#include "capspec/cli/config.hpp"
#include "capspec/report.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace capspec::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitBlowup = 2,
  kExitUnderResolved = 3,
  kExitNonContraction = 4,
  kExitVerificationFailure = 5,
};

inline const std::vector<std::string> kSuites = {"all", "propagator", "commutator", "scaling", "energy", "support"};

/// Runs one check family (or all of them) with the datum-independent inputs
/// taken from config. Throws std::invalid_argument for an unknown suite.
std::vector<VerificationReport> run_suite(const std::string& suite, const RunConfig& config);

// Each command prints progress to `log` and diagnostics to `err`. out_dir, when
// set, replaces [outputs] dir.

int cmd_simulate(const std::string& config_path, const std::optional<std::string>& out_dir, std::ostream& log,
                 std::ostream& err);
int cmd_picard(const std::string& config_path, const std::optional<std::string>& out_dir, std::ostream& log,
               std::ostream& err);
int cmd_verify(const std::string& suite, const std::string& config_path, const std::optional<std::string>& out_dir,
               std::ostream& log, std::ostream& err);
int cmd_sweep(const std::string& config_path, const std::optional<std::string>& out_dir, std::ostream& log,
              std::ostream& err);
/// Reads trace.csv (and metadata.json when present) from traj_dir.
int emit_plot_data(const std::string& traj_dir, const std::optional<std::string>& out_dir, std::ostream& log,
                   std::ostream& err);

}  // namespace capspec::cli
