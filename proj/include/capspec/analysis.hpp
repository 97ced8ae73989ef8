#pragma once

#include "capspec/evolution.hpp"
#include "capspec/picard.hpp"
#include "capspec/random_fields.hpp"
#include "capspec/report.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace capspec {

// ---------------------------------------------------------------------------
// Linear propagator: ‖e^{-tΛ³}f₀‖_{L⁴_T Ḣ^{9/4}} ≤ (1/√2)‖f₀‖_{3/2}
// ---------------------------------------------------------------------------

/// Constant in the propagator bound.
inline constexpr double kPropagatorConstant = 0.70710678118654752440;

/// Norm trace of t ↦ e^{-tΛ³}f₀ on a graded grid (step 0.002·max(t, 1/λ_max))
/// running to T, or for T = ∞ until the L⁴ integrand falls below 1e-16 of
/// its peak.
NormTrace propagator_trace(const SpectralField& f0, double horizon);

/// ‖e^{-·Λ³}f₀‖_{L⁴_T Ḣ^{9/4}} by trapezoid on propagator_trace; for T = ∞ the
/// integral beyond the last node is closed with the exact tail of the slowest
/// decay rate.
double propagator_l4_norm(const SpectralField& f0, double horizon);

/// The tolerance is scaled by max(1, bound), as in interpolation_check.
VerificationReport check_propagator_bound(const SpectralField& f0, double horizon, double tolerance = 1e-6);

// ---------------------------------------------------------------------------
// Commutator estimate ‖Λ^s([H,φ]Λ^σψ)‖ ≤ C ‖φ‖_{s+1/4+α} ‖ψ‖_{σ+1/4-α}
// ---------------------------------------------------------------------------

struct CommutatorExponents {
  double s;
  double sigma;
  double alpha;
};

/// The ratio whose supremum is C; 0 when the numerator vanishes.
double commutator_ratio(const SpectralField& phi, const SpectralField& psi, const CommutatorExponents& e);

/// Empirical supremum of commutator_ratio over sample_count random pairs at
/// cutoff N. Sample i cycles through the three band profiles and draws bands
/// [lo, hi] with hi log-uniform on [1, N]. Samples run in parallel; the value
/// depends only on (seed, sample_count, N).
double probe_commutator_sup(const CommutatorExponents& e, int sample_count, int cutoff, std::uint64_t seed);

/// Runs the probe at (N, samples) and (2N, 2·samples). measured is the
/// relative change of the supremum, bound 0.10.
VerificationReport probe_commutator_constant(const CommutatorExponents& e, int sample_count, int cutoff,
                                             std::uint64_t seed, double max_relative_change = 0.10);

// ---------------------------------------------------------------------------
// Fourier support of the commutator
// ---------------------------------------------------------------------------

/// For every output mode n ≠ 0, recomputes the direct sum with φ̂(k) zeroed on
/// |k| ≤ |n| and counts modes whose value changes at all. Passes with 0.
VerificationReport check_support_monotonicity(const SpectralField& phi, const SpectralField& psi, double sigma);

// ---------------------------------------------------------------------------
// Energy identity ½ d/dt‖U‖_s² + ‖U‖²_{s+3/2} = ⟨Λ^s F, Λ^s U⟩
// ---------------------------------------------------------------------------

/// Max over interior snapshots of the identity residual divided by the peak of
/// ‖U‖²_{s+3/2}. d/dt‖U‖_s² is taken as ‖U‖_s² times the centred difference of
/// log ‖U‖_s², which is second order and exact for a single decaying mode.
/// Where a neighbouring energy is zero the plain centred difference is used.
/// Requires at least three snapshots on a uniform grid.
double energy_identity_residual(std::span<const double> times, std::span<const SpectralField> snapshots,
                                std::span<const SpectralField> forcing, double s);

/// The forcing is the equation's own nonlinearity (zero for linear-only runs).
double energy_identity_residual(const Trajectory& traj, double s);

/// U = forced_linear_solve(φ, ψ), forcing ∂ₓ[H,φ]Λ³ψ.
double energy_identity_residual(const Trajectory& u, const Trajectory& phi, const Trajectory& psi, double s);

VerificationReport check_energy_identity(const Trajectory& traj, double s, double tolerance);

// ---------------------------------------------------------------------------
// Scaling family f ↦ λ⁻¹ f(λx, λ³t)
// ---------------------------------------------------------------------------

/// Ḣ^{3/2} distance between scale(A(t_final)) and B(t_final/λ³), where A evolves
/// f₀ and B evolves scale(f₀). Both runs use config.dt unless matched_grids,
/// in which case B steps with dt/λ³ and the two discrete flows coincide.
double scaling_discrepancy(const SpectralField& f0, int lambda, double t_final, const SolverConfig& config,
                           bool matched_grids = false);

VerificationReport check_scaling_family(const SpectralField& f0, int lambda, double t_final,
                                        const SolverConfig& config, double tolerance = 1e-6);

// ---------------------------------------------------------------------------
// Refinement studies
// ---------------------------------------------------------------------------

struct RefinementStudy {
  std::vector<double> dts;
  std::vector<double> errors;
  /// log2(errors[i] / errors[i+1]) for halving sequences.
  std::vector<double> orders;
  double min_order() const;
  double max_order() const;
};

/// Errors at dt and dt/2 in Ḣ^{3/2} at config.horizon against a dt/8 reference.
RefinementStudy temporal_order(const SpectralField& f0, const SolverConfig& config);

/// scaling_discrepancy at dt, dt/2, ..., dt/2^(levels-1).
RefinementStudy scaling_refinement(const SpectralField& f0, int lambda, double t_final,
                                   const SolverConfig& config, int levels);

/// energy_identity_residual of simulate(f0) at dt, dt/2, ..., record_every = 1.
RefinementStudy energy_refinement(const SpectralField& f0, const SolverConfig& config, double s, int levels);

// ---------------------------------------------------------------------------
// Frequency split and existence time
// ---------------------------------------------------------------------------

struct SplitSpec {
  double rho = 0.0;
  SpectralField high;
  SpectralField low;
};

SplitSpec frequency_split(const SpectralField& f0, double rho);

/// The flat two-mode profile cos x + cos 2x at the given cutoff.
SpectralField two_mode_profile(int cutoff);

/// Largest amplitude A = 2^j (j from 4 down to -30) for which picard_solve of
/// A·(cos x + cos 2x) on T = 1 converges with every contraction factor ≤ 1/2;
/// returns ‖A(cos x + cos 2x)‖_{3/2}. Grid step config.dt, cutoff config.cutoff.
double calibrate_eps_work(const SolverConfig& config, double tol = 1e-12, int maxit = 60);

struct ExistenceTime {
  double rho = 0.0;
  double horizon = 0.0;
  bool certified = false;
  PicardDiagnostics picard;
  VerificationReport report;
};

/// ρ is the smallest value on {1/2, 1, 2, 4, ...} with ‖f₀ restricted to
/// |n| > ρ‖_{3/2} ≤ margin·eps_work. T starts at horizon_cap and is halved
/// until picard_solve converges with every contraction factor < 1; certification
/// fails once T would drop below min_horizon.
ExistenceTime existence_time(const SpectralField& f0, double margin, double eps_work, const SolverConfig& config,
                             double horizon_cap, double min_horizon = 1e-6, double tol = 1e-10, int maxit = 40);

// ---------------------------------------------------------------------------
// Smallness sweep
// ---------------------------------------------------------------------------

struct SweepRow {
  double amplitude = 0.0;
  double initial_h32 = 0.0;
  Termination termination = Termination::completed;
  double final_h32 = 0.0;
  double max_h32 = 0.0;
  bool monotone_decay = true;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  /// Last decaying and first non-decaying amplitude, when both exist.
  std::optional<std::pair<double, double>> bracket;
};

/// True when the Ḣ^{3/2} norm never increases between recorded steps and the
/// run completed.
bool decays_monotonically(const Trajectory& traj);

/// Simulates amplitude·profile to T for each amplitude (rows run in parallel).
/// Throws std::invalid_argument for an empty or non-increasing amplitude list.
SweepTable smallness_sweep(const SpectralField& profile, const std::vector<double>& amplitudes, double horizon,
                           const SolverConfig& config);

/// Bisects [lo, hi] (lo decays, hi does not) to relative width rel_width and
/// returns the refined bracket.
std::pair<double, double> refine_threshold(const SpectralField& profile, double lo, double hi, double horizon,
                                           const SolverConfig& config, double rel_width = 1e-3);

}  // namespace capspec
