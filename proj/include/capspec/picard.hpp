#pragma once

#include "capspec/evolution.hpp"

#include <utility>
#include <vector>

namespace capspec {

/// Per-iterate record of the successive-substitution solve
/// f⁽ʲ⁺¹⁾ = e^{-tΛ³}f₀ + U(f⁽ʲ⁾, f⁽ʲ⁾) in L⁴_T Ḣ^{9/4}.
struct PicardDiagnostics {
  int iterate_count = 0;
  /// distances[j] = ‖f⁽ʲ⁺¹⁾ - f⁽ʲ⁾‖_{L⁴_T Ḣ^{9/4}}
  std::vector<double> distances;
  /// distances[j] / distances[j-1], j ≥ 1
  std::vector<double> contraction_factors;
  bool converged = false;

  double max_contraction_factor() const;
};

/// Picard iteration on the uniform grid of step config.dt over [0, horizon].
/// Stops when a distance drops to tol (converged) or when maxit iterates are
/// spent, a distance is non-finite, exceeds 1e6 × the first distance, or grows
/// three times in a row (non-contraction). The returned trajectory is the last
/// iterate with a snapshot at every grid point.
std::pair<Trajectory, PicardDiagnostics> picard_solve(const SpectralField& f0, double horizon, double tol,
                                                      int maxit, const SolverConfig& config);

/// ‖a - b‖_{L^p_T Ḣ^s} for trajectories with identical snapshot grids.
double trajectory_distance(const Trajectory& a, const Trajectory& b, double p, double s);

}  // namespace capspec
