#pragma once

#include "capspec/analysis.hpp"
#include "capspec/cli/config.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace capspec::cli {

struct ArtifactRecord {
  std::string file;
  std::uint32_t crc32 = 0;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::string command;
  std::string config_echo;
  std::string datum_spec;
  std::string output_dir;
  std::vector<ArtifactRecord> artifacts;
  std::vector<std::pair<std::string, double>> timings;  // seconds
  std::map<std::string, std::string> flags;
};

std::uint32_t crc32_of(const std::string& bytes);

/// Writes content to dir/name and records it in the manifest.
void write_artifact(const std::filesystem::path& dir, const std::string& name, const std::string& content,
                    RunManifest& manifest);

/// Writes dir/name as JSON; the manifest is not in its own artifact list.
void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest,
                    const std::string& name = "manifest.json");

/// t,h32,h94,h3,l4_h94 where l4_h94 is the running L⁴_t Ḣ^{9/4} norm.
std::string trace_csv(const NormTrace& trace);
/// t,n,re,im for n = 1..N of every snapshot.
std::string snapshots_csv(const Trajectory& traj);
std::string metadata_json(const Trajectory& traj, const RunConfig& config);

std::string reports_json(const std::vector<VerificationReport>& reports);
/// check_name,measured,bound,tolerance,passed
std::string reports_csv(const std::vector<VerificationReport>& reports);

/// iterate,distance,contraction_factor (empty factor on the first row).
std::string picard_csv(const PicardDiagnostics& diag);

std::string sweep_csv(const SweepTable& table);
/// One line: "threshold bracket: [lo, hi]" or "threshold bracket: none (...)".
std::string sweep_bracket_line(const SweepTable& table);

/// Short human description of the datum spec, e.g. "cosines 1:0.5, 2:0.5".
std::string describe_datum(const DatumSpec& datum);

}  // namespace capspec::cli
