#pragma once

#include "capspec/evolution.hpp"
#include "capspec/random_fields.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace capspec::cli {

/// Parse failure; what() reads "<source>:<line>: [section] key: message".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line, std::string field);
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct DatumSpec {
  enum class Kind { zero, modes, cosines, random };
  Kind kind = Kind::zero;
  std::vector<std::tuple<int, double, double>> modes;  // n, re, im
  std::vector<std::pair<int, double>> cosines;          // n, amplitude
  std::uint64_t seed = kDefaultSeed;
  BandProfile profile = BandProfile::flat;
  int band_lo = 1;
  int band_hi = 8;
  /// Rescales the datum to this Ḣ^{3/2} norm.
  std::optional<double> norm;
  /// Sweep multipliers applied to the datum.
  std::vector<double> amplitudes;

  friend bool operator==(const DatumSpec&, const DatumSpec&) = default;
};

struct OutputSpec {
  std::string dir = "capspec_out";
  bool snapshots = false;

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct VerifySpec {
  std::uint64_t seed = kDefaultSeed;
  int random_pairs = 100;
  int probe_samples = 200;
  int support_cutoff = 32;
  int support_inputs = 50;
  double scaling_dt = 0.015625;
  int refinement_levels = 4;

  friend bool operator==(const VerifySpec&, const VerifySpec&) = default;
};

struct RunConfig {
  DatumSpec datum;
  SolverConfig solver;
  double picard_tol = 1e-10;
  int picard_maxit = 40;
  OutputSpec outputs;
  VerifySpec verify;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

std::string to_string(DatumSpec::Kind kind);

/// Parses INI-style text with sections [datum], [solver], [outputs], [verify].
/// Unknown sections or keys, malformed values and failed validation all throw
/// ConfigError carrying the line number and the field.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Text that parse_config maps back to an identical RunConfig. Every key is
/// written; doubles carry 17 significant digits.
std::string echo_config(const RunConfig& config);

/// The datum at cutoff config.solver.cutoff, rescaled when datum.norm is set.
SpectralField build_datum(const RunConfig& config);

/// printf("%.17g").
std::string fmt17(double value);

}  // namespace capspec::cli
