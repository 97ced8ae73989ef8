#pragma once

#include "capspec/norms.hpp"
#include "capspec/spectral_field.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace capspec {

enum class Integrator { etdrk4, ifrk4 };
enum class Termination { completed, blowup_detected, under_resolved };

std::string to_string(Integrator integrator);
std::string to_string(Termination termination);
Integrator parse_integrator(const std::string& name);

/// Time-stepping parameters for simulate() and the grid used by picard_solve().
struct SolverConfig {
  int cutoff = 64;
  double dt = 1e-3;
  double horizon = 1.0;
  Integrator integrator = Integrator::etdrk4;
  int record_every = 1;
  /// Ḣ^{3/2} cap; defaults to 1e3 × ‖f₀‖_{3/2} when unset.
  std::optional<double> blowup_threshold;
  /// Largest admissible share of Ḣ^{3/2} energy above mode ⌊2N/3⌋.
  double tail_alarm = 0.05;
  /// Drops the nonlinearity, leaving the pure e^{-tΛ³} flow.
  bool linear_only = false;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

struct Trajectory {
  SolverConfig config;
  std::vector<double> snapshot_times;
  std::vector<SpectralField> snapshots;
  NormTrace norms;
  Termination termination = Termination::completed;
  long steps = 0;

  double final_time() const { return snapshot_times.empty() ? 0.0 : snapshot_times.back(); }
  const SpectralField& final_field() const { return snapshots.back(); }
};

/// e^{-tΛ³}: v̂(n) ↦ e^{-t|n|³} v̂(n).
SpectralField semigroup(const SpectralField& v, double t);

/// One-step map for f_t = -Λ³f + ∂ₓ[H,f]Λ³f with the linear part integrated
/// exactly. Coefficients are precomputed per |n| for a fixed (N, dt).
class Stepper {
 public:
  Stepper(int cutoff, double dt, Integrator integrator, bool linear_only = false);

  SpectralField step(const SpectralField& f) const;
  double dt() const { return dt_; }

 private:
  SpectralField etdrk4(const SpectralField& v) const;
  SpectralField ifrk4(const SpectralField& v) const;
  SpectralField rhs(const SpectralField& v) const;

  int cutoff_;
  double dt_;
  Integrator integrator_;
  bool linear_only_;
  // Indexed by |n| = 0..N.
  std::vector<double> e_, e2_, q_, f1_, f2_, f3_;
};

/// One step of size dt from f.
SpectralField step(const SpectralField& f, double dt, Integrator integrator, bool linear_only = false);

/// Evolves f₀ to config.horizon, stopping early on a non-finite state, a
/// Ḣ^{3/2} norm above the blow-up threshold, or a tail share above tail_alarm.
/// Norms are recorded at every step, snapshots every record_every steps and at
/// the final time.
Trajectory simulate(const SpectralField& f0, const SolverConfig& config);

/// Uniform grid 0, dt, 2dt, ..., with the last point clamped to the horizon.
std::vector<double> time_grid(double dt, double horizon);

// --- time-parallel kernels -------------------------------------------------

/// F_m = ∂ₓ[H, φ_m]Λ³ψ_m for every grid index m. Serial reference.
std::vector<SpectralField> forcing_series_serial(std::span<const SpectralField> phi,
                                                 std::span<const SpectralField> psi);
/// Same values, grid indices distributed over OpenMP threads.
std::vector<SpectralField> forcing_series(std::span<const SpectralField> phi,
                                          std::span<const SpectralField> psi);

/// D(t_m) = ∫₀^{t_m} e^{-(t_m - t')Λ³} F(t') dt' with F piecewise linear in t'
/// between grid values and the exponential kernel integrated exactly per mode.
std::vector<SpectralField> duhamel_integral(std::span<const double> times,
                                            std::span<const SpectralField> forcing);

/// Exact-kernel weights: ∫ over one cell of length h equals
/// h·(w0(z)·F_left + w1(z)·F_right) for decay rate λ = z/h.
double duhamel_weight_left(double z);
double duhamel_weight_right(double z);

/// Solves U_t + Λ³U = ∂ₓ[H,φ]Λ³ψ, U(0) = 0, on the snapshot grid shared by
/// φ and ψ. Throws std::invalid_argument when the grids differ.
Trajectory forced_linear_solve(const Trajectory& phi, const Trajectory& psi);

/// max_m ‖f(t_m) - e^{-t_mΛ³}f₀ - ∫₀^{t_m} e^{-(t_m-t')Λ³} N(f)(t') dt'‖_{3/2}
/// over the snapshot grid.
double duhamel_residual(const Trajectory& traj);

}  // namespace capspec
