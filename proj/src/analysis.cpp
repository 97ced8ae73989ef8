#include "capspec/analysis.hpp"

#include "capspec/commutator.hpp"
#include "capspec/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace capspec {

// --- propagator -------------------------------------------------------------

namespace {

int lowest_active_mode(const SpectralField& v) {
  for (int n = 1; n <= v.cutoff(); ++n)
    if (v[n] != Complex{}) return n;
  return 0;
}

double cube(int n) { return static_cast<double>(n) * n * n; }

}  // namespace

NormTrace propagator_trace(const SpectralField& f0, double horizon) {
  NormTrace trace({2.25, 1.5}, {});
  trace.record(0.0, f0);
  const int top = highest_active_mode(f0);
  if (top == 0) return trace;

  constexpr double kGrading = 0.002;
  const double fastest = 4.0 * cube(top);
  const double peak = std::pow(hs_norm(f0, 2.25), 4.0);
  const bool infinite = std::isinf(horizon);

  double t = 0.0;
  while (true) {
    double next = t + kGrading * std::max(t, 1.0 / fastest);
    const bool last = !infinite && next >= horizon;
    if (last) next = horizon;
    const auto f = semigroup(f0, next);
    trace.record(next, f);
    t = next;
    if (last) break;
    if (infinite && std::pow(hs_norm(f, 2.25), 4.0) < 1e-16 * peak) break;
  }
  return trace;
}

double propagator_l4_norm(const SpectralField& f0, double horizon) {
  const auto trace = propagator_trace(f0, horizon);
  if (trace.size() < 2) return 0.0;
  double integral = std::pow(lpt_hs_norm(trace, 4.0, 2.25), 4.0);
  if (std::isinf(horizon)) {
    // every term of the integrand decays at least as fast as e^{-4 n_min³ t}
    const double slowest = 4.0 * cube(lowest_active_mode(f0));
    integral += std::pow(trace.column(2.25).back(), 4.0) / slowest;
  }
  return std::pow(integral, 0.25);
}

VerificationReport check_propagator_bound(const SpectralField& f0, double horizon, double tolerance) {
  const double lhs = propagator_l4_norm(f0, horizon);
  const double rhs = kPropagatorConstant * hs_norm(f0, 1.5);
  auto r = VerificationReport::inequality("propagator_bound", lhs, rhs, tolerance * std::max(1.0, rhs));
  r.with("T", horizon).with("ratio", r.ratio());
  return r;
}

// --- commutator probe ------------------------------------------------------

double commutator_ratio(const SpectralField& phi, const SpectralField& psi, const CommutatorExponents& e) {
  const double num = hs_norm(commutator_fast(phi, psi, e.sigma), e.s);
  if (num == 0.0) return 0.0;
  const double den = hs_norm(phi, e.s + 0.25 + e.alpha) * hs_norm(psi, e.sigma + 0.25 - e.alpha);
  return num / den;
}

namespace {

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t i) {
  // splitmix64 finaliser
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SpectralField probe_field(std::mt19937_64& rng, int cutoff, BandProfile profile) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int hi = std::clamp(static_cast<int>(std::lround(std::exp(u(rng) * std::log(cutoff)))), 1, cutoff);
  const int lo = std::uniform_int_distribution<int>(1, hi)(rng);
  return random_field(rng, cutoff, profile, lo, hi);
}

}  // namespace

double probe_commutator_sup(const CommutatorExponents& e, int sample_count, int cutoff, std::uint64_t seed) {
  if (e.s < 0.0 || e.sigma < 0.0 || e.alpha < 0.0 || e.alpha > e.sigma)
    throw std::invalid_argument("probe_commutator_sup: need s, sigma >= 0 and alpha in [0, sigma]");
  constexpr BandProfile kProfiles[] = {BandProfile::flat, BandProfile::decaying, BandProfile::high_band};
  double sup = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(max : sup)
  for (int i = 0; i < sample_count; ++i) {
    std::mt19937_64 rng(sample_seed(seed, static_cast<std::uint64_t>(i)));
    const auto profile = kProfiles[i % 3];
    const auto phi = probe_field(rng, cutoff, profile);
    const auto psi = probe_field(rng, cutoff, profile);
    sup = std::max(sup, commutator_ratio(phi, psi, e));
  }
  return sup;
}

VerificationReport probe_commutator_constant(const CommutatorExponents& e, int sample_count, int cutoff,
                                             std::uint64_t seed, double max_relative_change) {
  const double coarse = probe_commutator_sup(e, sample_count, cutoff, seed);
  const double fine = probe_commutator_sup(e, 2 * sample_count, 2 * cutoff, seed);
  const double change = coarse > 0.0 ? std::abs(fine - coarse) / coarse : (fine > 0.0 ? kInfinity : 0.0);
  auto r = VerificationReport::inequality("commutator_constant", change, max_relative_change, 0.0);
  r.passed = r.passed && std::isfinite(coarse) && std::isfinite(fine);
  r.with("s", e.s).with("sigma", e.sigma).with("alpha", e.alpha);
  r.with("sup_coarse", coarse).with("sup_fine", fine).with("N", static_cast<double>(cutoff));
  r.with("samples", static_cast<double>(sample_count));
  r.with("note", std::string("empirical calibration; no numeric constant is claimed"));
  return r;
}

// --- support -----------------------------------------------------------------

VerificationReport check_support_monotonicity(const SpectralField& phi, const SpectralField& psi, double sigma) {
  const int cutoff = phi.cutoff();
  const int top_phi = highest_active_mode(phi);
  long changed = 0;
  long outside = 0;
  for (int n = -cutoff; n <= cutoff; ++n) {
    if (n == 0) continue;
    const auto full = commutator_direct_mode(phi, psi, sigma, n);
    SpectralField trimmed = phi;
    for (int k = 1; k <= std::min(std::abs(n), cutoff); ++k) trimmed.set(k, Complex{});
    const auto reduced = commutator_direct_mode(trimmed, psi, sigma, n);
    if (!(full == reduced)) ++changed;
    if (std::abs(n) >= top_phi && full != Complex{}) ++outside;
  }
  auto r = VerificationReport::identity("support_monotonicity", static_cast<double>(changed + outside), 0.0, 0.0);
  r.with("changed_modes", static_cast<double>(changed)).with("modes_outside_support", static_cast<double>(outside));
  r.with("sigma", sigma);
  return r;
}

// --- energy identity ---------------------------------------------------------

double energy_identity_residual(std::span<const double> times, std::span<const SpectralField> snapshots,
                                std::span<const SpectralField> forcing, double s) {
  if (snapshots.size() < 3 || times.size() != snapshots.size() || forcing.size() != snapshots.size())
    throw std::invalid_argument("energy identity: need at least three snapshots with matching forcing");

  std::vector<double> energy(snapshots.size()), dissipation(snapshots.size());
  double scale = 0.0;
  for (std::size_t m = 0; m < snapshots.size(); ++m) {
    energy[m] = std::pow(hs_norm(snapshots[m], s), 2.0);
    dissipation[m] = std::pow(hs_norm(snapshots[m], s + 1.5), 2.0);
    scale = std::max(scale, dissipation[m]);
  }
  if (scale == 0.0) return 0.0;

  double worst = 0.0;
  for (std::size_t m = 1; m + 1 < snapshots.size(); ++m) {
    const double span = times[m + 1] - times[m - 1];
    const double half_rate = energy[m - 1] > 0.0 && energy[m + 1] > 0.0
                                 ? 0.5 * energy[m] * (std::log(energy[m + 1]) - std::log(energy[m - 1])) / span
                                 : 0.5 * (energy[m + 1] - energy[m - 1]) / span;
    const double pairing = hs_inner(forcing[m], snapshots[m], s);
    worst = std::max(worst, std::abs(half_rate + dissipation[m] - pairing));
  }
  return worst / scale;
}

double energy_identity_residual(const Trajectory& traj, double s) {
  std::vector<SpectralField> forcing;
  if (traj.config.linear_only || traj.snapshots.empty())
    forcing.assign(traj.snapshots.size(), SpectralField(traj.snapshots.empty() ? 0 : traj.snapshots[0].cutoff()));
  else
    forcing = forcing_series(traj.snapshots, traj.snapshots);
  return energy_identity_residual(traj.snapshot_times, traj.snapshots, forcing, s);
}

double energy_identity_residual(const Trajectory& u, const Trajectory& phi, const Trajectory& psi, double s) {
  const auto forcing = forcing_series(phi.snapshots, psi.snapshots);
  return energy_identity_residual(u.snapshot_times, u.snapshots, forcing, s);
}

VerificationReport check_energy_identity(const Trajectory& traj, double s, double tolerance) {
  auto r = VerificationReport::identity("energy_identity", energy_identity_residual(traj, s), 0.0, tolerance);
  r.with("s", s).with("snapshots", static_cast<double>(traj.snapshots.size()));
  return r;
}

// --- scaling -------------------------------------------------------------------

double scaling_discrepancy(const SpectralField& f0, int lambda, double t_final, const SolverConfig& config,
                           bool matched_grids) {
  SolverConfig a = config;
  a.horizon = t_final;
  a.record_every = std::numeric_limits<int>::max();
  a.blowup_threshold = kInfinity;

  SolverConfig b = a;
  b.cutoff = lambda * config.cutoff;
  b.horizon = t_final / cube(lambda);
  if (matched_grids) b.dt = config.dt / cube(lambda);
  const auto run_a = simulate(f0.resized(a.cutoff), a);
  const auto run_b = simulate(scale_transform(f0.resized(a.cutoff), lambda, b.cutoff), b);
  if (run_a.termination != Termination::completed || run_b.termination != Termination::completed)
    return kInfinity;
  const auto mapped = scale_transform(run_a.final_field(), lambda, b.cutoff);
  return hs_norm(mapped - run_b.final_field(), 1.5);
}

VerificationReport check_scaling_family(const SpectralField& f0, int lambda, double t_final,
                                        const SolverConfig& config, double tolerance) {
  const double d = scaling_discrepancy(f0, lambda, t_final, config);
  auto r = VerificationReport::inequality("scaling_family", d, 0.0, tolerance);
  r.with("lambda", static_cast<double>(lambda)).with("t_final", t_final).with("dt", config.dt);
  return r;
}

// --- refinement ------------------------------------------------------------------

double RefinementStudy::min_order() const {
  return orders.empty() ? std::numeric_limits<double>::quiet_NaN() : *std::min_element(orders.begin(), orders.end());
}

double RefinementStudy::max_order() const {
  return orders.empty() ? std::numeric_limits<double>::quiet_NaN() : *std::max_element(orders.begin(), orders.end());
}

namespace {

void fill_orders(RefinementStudy& study) {
  study.orders.clear();
  for (std::size_t i = 0; i + 1 < study.errors.size(); ++i)
    study.orders.push_back(std::log2(study.errors[i] / study.errors[i + 1]));
}

}  // namespace

RefinementStudy temporal_order(const SpectralField& f0, const SolverConfig& config) {
  SolverConfig c = config;
  c.record_every = std::numeric_limits<int>::max();
  c.blowup_threshold = kInfinity;
  auto final_at = [&](double dt) {
    c.dt = dt;
    return simulate(f0, c).final_field();
  };
  const auto reference = final_at(config.dt / 8.0);
  RefinementStudy study;
  for (double dt : {config.dt, config.dt / 2.0}) {
    study.dts.push_back(dt);
    study.errors.push_back(hs_norm(final_at(dt) - reference, 1.5));
  }
  fill_orders(study);
  return study;
}

RefinementStudy scaling_refinement(const SpectralField& f0, int lambda, double t_final, const SolverConfig& config,
                                   int levels) {
  RefinementStudy study;
  SolverConfig c = config;
  for (int i = 0; i < levels; ++i) {
    c.dt = config.dt / std::pow(2.0, i);
    study.dts.push_back(c.dt);
    study.errors.push_back(scaling_discrepancy(f0, lambda, t_final, c));
  }
  fill_orders(study);
  return study;
}

RefinementStudy energy_refinement(const SpectralField& f0, const SolverConfig& config, double s, int levels) {
  RefinementStudy study;
  SolverConfig c = config;
  c.record_every = 1;
  for (int i = 0; i < levels; ++i) {
    c.dt = config.dt / std::pow(2.0, i);
    study.dts.push_back(c.dt);
    study.errors.push_back(energy_identity_residual(simulate(f0, c), s));
  }
  fill_orders(study);
  return study;
}

// --- split and existence time ----------------------------------------------------

SplitSpec frequency_split(const SpectralField& f0, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("frequency_split: rho must be positive");
  return {rho, high_pass(f0, rho), low_pass(f0, rho)};
}

SpectralField two_mode_profile(int cutoff) { return SpectralField::cosines({{1, 1.0}, {2, 1.0}}, cutoff); }

double calibrate_eps_work(const SolverConfig& config, double tol, int maxit) {
  const auto profile = two_mode_profile(config.cutoff);
  for (int j = 4; j >= -30; --j) {
    const double a = std::ldexp(1.0, j);
    const auto [traj, diag] = picard_solve(a * profile, 1.0, tol, maxit, config);
    if (diag.converged && diag.max_contraction_factor() <= 0.5) return a * hs_norm(profile, 1.5);
  }
  return 0.0;
}

ExistenceTime existence_time(const SpectralField& f0, double margin, double eps_work, const SolverConfig& config,
                             double horizon_cap, double min_horizon, double tol, int maxit) {
  if (!(margin > 0.0 && margin < 1.0)) throw std::invalid_argument("existence_time: margin must lie in (0, 1)");
  ExistenceTime out;

  const double target = margin * eps_work;
  double rho = 0.5;
  while (hs_norm(high_pass(f0, rho), 1.5) > target && rho < f0.cutoff()) rho *= 2.0;
  out.rho = rho;

  double horizon = horizon_cap;
  while (horizon >= min_horizon) {
    SolverConfig c = config;
    c.dt = std::min(config.dt, horizon / 100.0);
    auto [traj, diag] = picard_solve(f0, horizon, tol, maxit, c);
    const bool contracts = diag.converged && diag.max_contraction_factor() < 1.0;
    out.picard = std::move(diag);
    if (contracts) {
      out.certified = true;
      break;
    }
    horizon *= 0.5;
  }
  out.horizon = out.certified ? horizon : 0.0;

  out.report = VerificationReport::inequality("existence_time", out.picard.max_contraction_factor(), 1.0, 0.0);
  out.report.passed = out.certified;
  out.report.with("rho", rho).with("T", out.horizon).with("eps_work", eps_work).with("margin", margin);
  out.report.with("high_part_h32", hs_norm(high_pass(f0, rho), 1.5));
  return out;
}

// --- smallness sweep -----------------------------------------------------------------

bool decays_monotonically(const Trajectory& traj) {
  if (traj.termination != Termination::completed) return false;
  const auto h32 = traj.norms.column(1.5);
  for (std::size_t i = 1; i < h32.size(); ++i)
    if (h32[i] > h32[i - 1]) return false;
  return true;
}

namespace {

SweepRow sweep_row(const SpectralField& profile, double amplitude, const SolverConfig& config) {
  const auto f0 = amplitude * profile;
  const auto traj = simulate(f0, config);
  const auto h32 = traj.norms.column(1.5);
  SweepRow row;
  row.amplitude = amplitude;
  row.initial_h32 = h32.front();
  row.termination = traj.termination;
  row.final_h32 = h32.back();
  row.max_h32 = *std::max_element(h32.begin(), h32.end());
  row.monotone_decay = decays_monotonically(traj);
  return row;
}

}  // namespace

SweepTable smallness_sweep(const SpectralField& profile, const std::vector<double>& amplitudes, double horizon,
                           const SolverConfig& config) {
  if (amplitudes.empty()) throw std::invalid_argument("smallness_sweep: empty amplitude list");
  for (std::size_t i = 1; i < amplitudes.size(); ++i)
    if (!(amplitudes[i] > amplitudes[i - 1]))
      throw std::invalid_argument("smallness_sweep: amplitudes must be strictly increasing");

  SolverConfig c = config;
  c.horizon = horizon;
  c.record_every = std::numeric_limits<int>::max();
  c.validate();

  SweepTable table;
  table.rows.resize(amplitudes.size());
  const auto count = static_cast<long>(amplitudes.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    table.rows[k] = sweep_row(profile, amplitudes[k], c);
  }

  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (!table.rows[i].monotone_decay) {
      if (i > 0) table.bracket = std::make_pair(table.rows[i - 1].amplitude, table.rows[i].amplitude);
      break;
    }
  }
  return table;
}

std::pair<double, double> refine_threshold(const SpectralField& profile, double lo, double hi, double horizon,
                                           const SolverConfig& config, double rel_width) {
  SolverConfig c = config;
  c.horizon = horizon;
  c.record_every = std::numeric_limits<int>::max();
  while ((hi - lo) > rel_width * hi) {
    const double mid = 0.5 * (lo + hi);
    if (sweep_row(profile, mid, c).monotone_decay)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

}  // namespace capspec
