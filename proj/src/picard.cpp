#include "capspec/picard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace capspec {

double PicardDiagnostics::max_contraction_factor() const {
  if (contraction_factors.empty()) return 0.0;
  return *std::max_element(contraction_factors.begin(), contraction_factors.end());
}

double trajectory_distance(const Trajectory& a, const Trajectory& b, double p, double s) {
  if (a.snapshot_times.size() != b.snapshot_times.size())
    throw std::invalid_argument("trajectory_distance: grids differ");
  std::vector<double> values(a.snapshots.size());
  for (std::size_t m = 0; m < values.size(); ++m) values[m] = hs_norm(a.snapshots[m] - b.snapshots[m], s);
  return lp_time_norm(a.snapshot_times, values, p);
}

namespace {

double l4_h94_distance(std::span<const double> times, std::span<const SpectralField> a,
                       std::span<const SpectralField> b) {
  std::vector<double> values(times.size());
  for (std::size_t m = 0; m < times.size(); ++m) values[m] = hs_norm(a[m] - b[m], 2.25);
  return lp_time_norm(times, values, 4.0);
}

}  // namespace

std::pair<Trajectory, PicardDiagnostics> picard_solve(const SpectralField& f0, double horizon, double tol,
                                                      int maxit, const SolverConfig& config) {
  if (!(tol > 0.0)) throw std::invalid_argument("picard_solve: tol must be positive");
  if (maxit < 1) throw std::invalid_argument("picard_solve: maxit must be at least 1");
  SolverConfig cfg = config;
  cfg.horizon = horizon;
  cfg.validate();

  const auto times = time_grid(cfg.dt, horizon);
  const auto datum = f0.resized(cfg.cutoff);

  std::vector<SpectralField> base(times.size());
  for (std::size_t m = 0; m < times.size(); ++m) base[m] = semigroup(datum, times[m]);

  PicardDiagnostics diag;
  std::vector<SpectralField> current = base;
  int growth_streak = 0;
  for (int j = 0; j < maxit; ++j) {
    const auto forcing = forcing_series(current, current);
    auto next = duhamel_integral(times, forcing);
    for (std::size_t m = 0; m < next.size(); ++m) next[m] += base[m];

    const double d = l4_h94_distance(times, next, current);
    if (!diag.distances.empty()) {
      const double prev = diag.distances.back();
      diag.contraction_factors.push_back(prev > 0.0 ? d / prev : 0.0);
      growth_streak = d > prev ? growth_streak + 1 : 0;
    }
    diag.distances.push_back(d);
    diag.iterate_count = j + 1;
    current = std::move(next);

    if (d <= tol) {
      diag.converged = true;
      break;
    }
    if (!std::isfinite(d) || d > 1e6 * diag.distances.front() || growth_streak >= 3) break;
  }

  Trajectory traj;
  traj.config = cfg;
  traj.snapshot_times = times;
  traj.snapshots = std::move(current);
  traj.steps = static_cast<long>(times.size()) - 1;
  traj.termination = Termination::completed;
  for (std::size_t m = 0; m < times.size(); ++m) {
    if (!traj.snapshots[m].all_finite()) break;
    traj.norms.record(times[m], traj.snapshots[m]);
  }
  return {std::move(traj), std::move(diag)};
}

}  // namespace capspec
