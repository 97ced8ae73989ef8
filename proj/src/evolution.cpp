#include "capspec/evolution.hpp"

#include "capspec/commutator.hpp"
#include "capspec/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace capspec {

std::string to_string(Integrator integrator) {
  return integrator == Integrator::etdrk4 ? "etdrk4" : "ifrk4";
}

std::string to_string(Termination termination) {
  switch (termination) {
    case Termination::completed: return "completed";
    case Termination::blowup_detected: return "blowup_detected";
    case Termination::under_resolved: return "under_resolved";
  }
  return "unknown";
}

Integrator parse_integrator(const std::string& name) {
  if (name == "etdrk4") return Integrator::etdrk4;
  if (name == "ifrk4") return Integrator::ifrk4;
  throw std::invalid_argument("integrator: expected etdrk4 or ifrk4, got '" + name + "'");
}

void SolverConfig::validate() const {
  if (cutoff < 1) throw std::invalid_argument("N: cutoff must be a positive integer");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt: time step must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("T: horizon must be positive");
  if (record_every < 1) throw std::invalid_argument("record_every: must be at least 1");
  if (blowup_threshold && !(*blowup_threshold > 0.0))
    throw std::invalid_argument("blowup_threshold: must be positive");
  if (!(tail_alarm > 0.0 && tail_alarm < 1.0)) throw std::invalid_argument("tail_alarm: must lie in (0, 1)");
}

namespace {

double cube(int n) { return static_cast<double>(n) * n * n; }

}  // namespace

SpectralField semigroup(const SpectralField& v, double t) {
  if (t < 0.0) throw std::invalid_argument("semigroup: negative time");
  SpectralField out(v.cutoff());
  for (int n = 1; n <= v.cutoff(); ++n) out.set(n, std::exp(-t * cube(n)) * v[n]);
  return out;
}

Stepper::Stepper(int cutoff, double dt, Integrator integrator, bool linear_only)
    : cutoff_(cutoff), dt_(dt), integrator_(integrator), linear_only_(linear_only) {
  if (!(dt > 0.0)) throw std::invalid_argument("Stepper: dt must be positive");
  const auto size = static_cast<std::size_t>(cutoff + 1);
  e_.resize(size);
  e2_.resize(size);
  q_.resize(size);
  f1_.resize(size);
  f2_.resize(size);
  f3_.resize(size);

  // ETDRK4 φ-function combinations by contour averaging on a unit circle
  // centred at z = dt·L, which avoids cancellation for small |z|.
  constexpr int kContour = 64;
  for (int n = 0; n <= cutoff; ++n) {
    const double z = -dt * cube(n);
    const auto i = static_cast<std::size_t>(n);
    e_[i] = std::exp(z);
    e2_[i] = std::exp(z / 2.0);

    std::complex<double> q{}, a{}, b{}, c{};
    for (int j = 0; j < kContour; ++j) {
      const double theta = 2.0 * std::numbers::pi * (j + 0.5) / kContour;
      const std::complex<double> r = z + std::polar(1.0, theta);
      const auto er = std::exp(r);
      const auto r3 = r * r * r;
      q += (std::exp(r / 2.0) - 1.0) / r;
      a += (-4.0 - r + er * (4.0 - 3.0 * r + r * r)) / r3;
      b += (2.0 + r + er * (r - 2.0)) / r3;
      c += (-4.0 - 3.0 * r - r * r + er * (4.0 - r)) / r3;
    }
    q_[i] = dt * q.real() / kContour;
    f1_[i] = dt * a.real() / kContour;
    f2_[i] = dt * b.real() / kContour;
    f3_[i] = dt * c.real() / kContour;
  }
}

SpectralField Stepper::rhs(const SpectralField& v) const {
  if (linear_only_) return SpectralField(v.cutoff());
  return nonlinearity(v);
}

SpectralField Stepper::step(const SpectralField& f) const {
  if (f.cutoff() != cutoff_) throw std::invalid_argument("Stepper::step: field cutoff does not match stepper");
  if (linear_only_) {
    SpectralField out(cutoff_);
    for (int n = 1; n <= cutoff_; ++n) out.set(n, e_[static_cast<std::size_t>(n)] * f[n]);
    return out;
  }
  return integrator_ == Integrator::etdrk4 ? etdrk4(f) : ifrk4(f);
}

SpectralField Stepper::etdrk4(const SpectralField& v) const {
  const int cutoff = cutoff_;
  auto combine = [cutoff](auto&& fn) {
    SpectralField out(cutoff);
    for (int n = 1; n <= cutoff; ++n) out.set(n, fn(static_cast<std::size_t>(n), n));
    return out;
  };

  const auto nv = rhs(v);
  const auto a = combine([&](std::size_t i, int n) { return e2_[i] * v[n] + q_[i] * nv[n]; });
  const auto na = rhs(a);
  const auto b = combine([&](std::size_t i, int n) { return e2_[i] * v[n] + q_[i] * na[n]; });
  const auto nb = rhs(b);
  const auto c = combine([&](std::size_t i, int n) { return e2_[i] * a[n] + q_[i] * (2.0 * nb[n] - nv[n]); });
  const auto nc = rhs(c);
  return combine([&](std::size_t i, int n) {
    return e_[i] * v[n] + f1_[i] * nv[n] + 2.0 * f2_[i] * (na[n] + nb[n]) + f3_[i] * nc[n];
  });
}

SpectralField Stepper::ifrk4(const SpectralField& v) const {
  const int cutoff = cutoff_;
  const double h = dt_;
  auto combine = [cutoff](auto&& fn) {
    SpectralField out(cutoff);
    for (int n = 1; n <= cutoff; ++n) out.set(n, fn(static_cast<std::size_t>(n), n));
    return out;
  };

  const auto k1 = rhs(v);
  const auto k2 = rhs(combine([&](std::size_t i, int n) { return e2_[i] * (v[n] + 0.5 * h * k1[n]); }));
  const auto k3 = rhs(combine([&](std::size_t i, int n) { return e2_[i] * v[n] + 0.5 * h * k2[n]; }));
  const auto k4 = rhs(combine([&](std::size_t i, int n) { return e_[i] * v[n] + h * e2_[i] * k3[n]; }));
  return combine([&](std::size_t i, int n) {
    return e_[i] * v[n] + h / 6.0 * (e_[i] * k1[n] + 2.0 * e2_[i] * (k2[n] + k3[n]) + k4[n]);
  });
}

SpectralField step(const SpectralField& f, double dt, Integrator integrator, bool linear_only) {
  return Stepper(f.cutoff(), dt, integrator, linear_only).step(f);
}

std::vector<double> time_grid(double dt, double horizon) {
  if (!(dt > 0.0) || !(horizon > 0.0)) throw std::invalid_argument("time_grid: dt and horizon must be positive");
  const double ratio = horizon / dt;
  auto steps = static_cast<long>(std::llround(ratio));
  if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * std::max(1.0, ratio))
    steps = static_cast<long>(std::ceil(ratio));
  steps = std::max(1L, steps);
  std::vector<double> t(static_cast<std::size_t>(steps + 1));
  for (long k = 0; k <= steps; ++k) t[static_cast<std::size_t>(k)] = std::min(horizon, static_cast<double>(k) * dt);
  t.back() = horizon;
  return t;
}

Trajectory simulate(const SpectralField& f0, const SolverConfig& config) {
  config.validate();
  const int cutoff = config.cutoff;
  if (highest_active_mode(f0) > cutoff)
    throw std::invalid_argument("simulate: initial datum has modes above the cutoff");

  Trajectory traj;
  traj.config = config;
  SpectralField f = f0.resized(cutoff);

  const double initial = hs_norm(f, 1.5);
  const double threshold =
      config.blowup_threshold.value_or(initial > 0.0 ? 1e3 * initial : kInfinity);
  const int tail_mode = (2 * cutoff) / 3;

  const auto grid = time_grid(config.dt, config.horizon);
  const Stepper stepper(cutoff, config.dt, config.integrator, config.linear_only);
  std::optional<Stepper> last_stepper;
  const double last_dt = grid.back() - grid[grid.size() - 2];
  if (std::abs(last_dt - config.dt) > 1e-12 * config.dt)
    last_stepper.emplace(cutoff, last_dt, config.integrator, config.linear_only);

  traj.norms.record(0.0, f);
  traj.snapshot_times.push_back(0.0);
  traj.snapshots.push_back(f);

  const std::size_t total = grid.size() - 1;
  for (std::size_t k = 1; k <= total; ++k) {
    const bool last = k == total;
    f = (last && last_stepper) ? last_stepper->step(f) : stepper.step(f);
    ++traj.steps;
    const double t = grid[k];

    bool stop = false;
    if (!f.all_finite()) {
      traj.termination = Termination::blowup_detected;
      break;  // a non-finite state is not recorded
    }
    traj.norms.record(t, f);
    if (hs_norm(f, 1.5) > threshold) {
      traj.termination = Termination::blowup_detected;
      stop = true;
    } else if (tail_fraction(f, tail_mode) > config.tail_alarm) {
      traj.termination = Termination::under_resolved;
      stop = true;
    }
    if (stop || last || k % static_cast<std::size_t>(config.record_every) == 0) {
      traj.snapshot_times.push_back(t);
      traj.snapshots.push_back(f);
    }
    if (stop) break;
  }
  return traj;
}

std::vector<SpectralField> forcing_series_serial(std::span<const SpectralField> phi,
                                                 std::span<const SpectralField> psi) {
  if (phi.size() != psi.size()) throw std::invalid_argument("forcing_series: series lengths differ");
  std::vector<SpectralField> out;
  out.reserve(phi.size());
  for (std::size_t m = 0; m < phi.size(); ++m) out.push_back(bilinear_forcing(phi[m], psi[m]));
  return out;
}

std::vector<SpectralField> forcing_series(std::span<const SpectralField> phi,
                                          std::span<const SpectralField> psi) {
  if (phi.size() != psi.size()) throw std::invalid_argument("forcing_series: series lengths differ");
  std::vector<SpectralField> out(phi.size());
  const auto count = static_cast<long>(phi.size());
#pragma omp parallel for schedule(static)
  for (long m = 0; m < count; ++m) {
    const auto i = static_cast<std::size_t>(m);
    out[i] = bilinear_forcing(phi[i], psi[i]);
  }
  return out;
}

double duhamel_weight_left(double z) {
  // (1 - (1+z)e^{-z}) / z²
  if (z < 0.25) {
    // Σ_k (-1)^k (k+1)/(k+2)! z^k
    double sum = 0.0, zk = 1.0, fact = 2.0;
    for (int k = 0; k < 24; ++k) {
      const double term = (k + 1) / fact;
      sum += ((k % 2) ? -term : term) * zk;
      zk *= z;
      fact *= (k + 3);
    }
    return sum;
  }
  return (1.0 - (1.0 + z) * std::exp(-z)) / (z * z);
}

double duhamel_weight_right(double z) {
  // (z - 1 + e^{-z}) / z²
  if (z < 0.25) {
    // Σ_k (-1)^k z^k / (k+2)!
    double sum = 0.0, zk = 1.0, fact = 2.0;
    for (int k = 0; k < 24; ++k) {
      sum += ((k % 2) ? -zk : zk) / fact;
      zk *= z;
      fact *= (k + 3);
    }
    return sum;
  }
  return (z - 1.0 + std::exp(-z)) / (z * z);
}

std::vector<SpectralField> duhamel_integral(std::span<const double> times,
                                            std::span<const SpectralField> forcing) {
  if (times.size() != forcing.size() || times.empty())
    throw std::invalid_argument("duhamel_integral: grid and forcing sizes differ");
  const int cutoff = forcing.front().cutoff();
  std::vector<SpectralField> out;
  out.reserve(times.size());
  out.emplace_back(cutoff);
  for (std::size_t m = 0; m + 1 < times.size(); ++m) {
    const double h = times[m + 1] - times[m];
    SpectralField next(cutoff);
    for (int n = 1; n <= cutoff; ++n) {
      const double z = h * cube(n);
      const auto value = std::exp(-z) * out[m][n] +
                         h * (duhamel_weight_left(z) * forcing[m][n] +
                              duhamel_weight_right(z) * forcing[m + 1][n]);
      next.set(n, value);
    }
    out.push_back(std::move(next));
  }
  return out;
}

Trajectory forced_linear_solve(const Trajectory& phi, const Trajectory& psi) {
  if (phi.snapshot_times.size() != psi.snapshot_times.size())
    throw std::invalid_argument("forced_linear_solve: trajectories have different grids");
  for (std::size_t m = 0; m < phi.snapshot_times.size(); ++m)
    if (std::abs(phi.snapshot_times[m] - psi.snapshot_times[m]) > 1e-12 * std::max(1.0, phi.snapshot_times[m]))
      throw std::invalid_argument("forced_linear_solve: trajectories have different grids");

  const auto forcing = forcing_series(phi.snapshots, psi.snapshots);
  Trajectory u;
  u.config = phi.config;
  u.config.linear_only = false;
  u.snapshot_times = phi.snapshot_times;
  u.snapshots = duhamel_integral(u.snapshot_times, forcing);
  u.steps = static_cast<long>(u.snapshot_times.size()) - 1;
  for (std::size_t m = 0; m < u.snapshots.size(); ++m) u.norms.record(u.snapshot_times[m], u.snapshots[m]);
  return u;
}

double duhamel_residual(const Trajectory& traj) {
  if (traj.snapshots.empty()) return 0.0;
  const auto& times = traj.snapshot_times;
  const auto& f0 = traj.snapshots.front();

  std::vector<SpectralField> forcing;
  if (traj.config.linear_only)
    forcing.assign(traj.snapshots.size(), SpectralField(f0.cutoff()));
  else
    forcing = forcing_series(traj.snapshots, traj.snapshots);
  const auto integral = duhamel_integral(times, forcing);

  double worst = 0.0;
  for (std::size_t m = 0; m < times.size(); ++m) {
    const auto r = traj.snapshots[m] - semigroup(f0, times[m]) - integral[m];
    worst = std::max(worst, hs_norm(r, 1.5));
  }
  return worst;
}

}  // namespace capspec
