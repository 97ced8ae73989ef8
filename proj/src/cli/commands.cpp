#include "capspec/cli/commands.hpp"

#include "capspec/analysis.hpp"
#include "capspec/cli/output.hpp"
#include "capspec/commutator.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace capspec::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string tagged(const std::string& name, const std::string& tag) { return name + "[" + tag + "]"; }

// Random band-limited field; the profile cycles with i and the band is drawn
// from rng.
SpectralField random_input(std::mt19937_64& rng, int cutoff, int i) {
  static constexpr BandProfile kProfiles[] = {BandProfile::flat, BandProfile::decaying, BandProfile::high_band};
  std::uniform_int_distribution<int> hi_dist(1, cutoff);
  const int hi = hi_dist(rng);
  std::uniform_int_distribution<int> lo_dist(1, hi);
  const int lo = lo_dist(rng);
  return random_field(rng, cutoff, kProfiles[i % 3], lo, hi);
}

// --- suites ---------------------------------------------------------------

void propagator_suite(const RunConfig& c, std::vector<VerificationReport>& out) {
  const int n_max = c.solver.cutoff;
  std::mt19937_64 rng(c.verify.seed);
  double worst_ratio = 0.0;
  int failures = 0;
  for (int i = 0; i < c.verify.random_pairs; ++i) {
    auto r = check_propagator_bound(random_input(rng, n_max, i), kInfinity, 1e-6);
    worst_ratio = std::max(worst_ratio, r.ratio());
    if (!r.passed) {
      r.check_name = tagged("propagator_bound_random", std::to_string(i));
      out.push_back(r);
      ++failures;
    }
  }
  auto summary = VerificationReport::inequality("propagator_bound_random", worst_ratio, 1.0, 1e-6);
  summary.passed = summary.passed && failures == 0;
  summary.with("data", static_cast<double>(c.verify.random_pairs)).with("N", static_cast<double>(n_max));
  summary.with("failures", static_cast<double>(failures));
  out.push_back(summary);

  double worst_rel = 0.0;
  int worst_n = 1;
  for (int n = 1; n <= n_max; ++n) {
    const auto f = SpectralField::cosines({{n, 1.0}}, n_max);
    const double lhs = propagator_l4_norm(f, kInfinity);
    const double closed = std::pow(static_cast<double>(n), 1.5) / 2.0;
    const double rel = std::abs(lhs - kPropagatorConstant * hs_norm(f, 1.5)) / closed;
    const double rel_closed = std::abs(lhs - closed) / closed;
    if (std::max(rel, rel_closed) > worst_rel) {
      worst_rel = std::max(rel, rel_closed);
      worst_n = n;
    }
  }
  auto sat = VerificationReport::inequality("propagator_single_pair_equality", worst_rel, 1e-3, 0.0);
  sat.with("worst_n", static_cast<double>(worst_n)).with("pairs", static_cast<double>(n_max));
  out.push_back(sat);
}

void commutator_suite(const RunConfig& c, std::vector<VerificationReport>& out) {
  const int n_max = c.solver.cutoff;
  for (double sigma : {0.0, 3.0}) {
    std::mt19937_64 rng(c.verify.seed + static_cast<std::uint64_t>(sigma));
    double worst_rel = 0.0;
    double worst_zero = 0.0;
    int zero_pairs = 0;
    for (int i = 0; i < c.verify.random_pairs; ++i) {
      const auto phi = random_input(rng, n_max, i);
      const auto psi = random_input(rng, n_max, i + 1);
      const auto direct = commutator_direct(phi, psi, sigma);
      const auto fast = commutator_fast(phi, psi, sigma);
      const double scale = hs_norm(direct, 0.0);
      if (scale > 0.0) {
        worst_rel = std::max(worst_rel, hs_norm(fast - direct, 0.0) / scale);
      } else {
        // Relative error is undefined here; measure against the size of the
        // bilinear inputs instead.
        ++zero_pairs;
        worst_zero = std::max(worst_zero, hs_norm(fast, 0.0) / (hs_norm(phi, 0.0) * hs_norm(psi, sigma)));
      }
    }
    const std::string tag = "sigma=" + fmt17(sigma);
    auto r = VerificationReport::inequality(tagged("commutator_oracle_equivalence", tag), worst_rel, 1e-10, 0.0);
    r.with("pairs", static_cast<double>(c.verify.random_pairs - zero_pairs)).with("N", static_cast<double>(n_max));
    out.push_back(r);
    auto z = VerificationReport::inequality(tagged("commutator_structural_zero", tag), worst_zero, 1e-12, 0.0);
    z.with("pairs", static_cast<double>(zero_pairs));
    out.push_back(z);
  }

  {
    const auto got = commutator_direct(SpectralField::cosines({{3, 1.0}}, 8), SpectralField::cosines({{2, 1.0}}, 8), 3);
    const auto sin_x = SpectralField::from_modes({{1, Complex(0.0, -0.5)}}, 8);
    out.push_back(VerificationReport::identity("commutator_closed_form_8_sin_x",
                                               max_coefficient_difference(got, 8.0 * sin_x), 0.0, 1e-12));
  }
  {
    const auto got = commutator_direct(SpectralField::cosines({{1, 1.0}}, 8), SpectralField::cosines({{5, 1.0}}, 8), 3);
    out.push_back(
        VerificationReport::identity("commutator_closed_form_empty_support", got.max_abs_coefficient(), 0.0, 1e-15));
  }

  for (double s : {0.5, 1.0, 1.5})
    for (double sigma : {0.0, 3.0})
      for (double alpha : sigma == 0.0 ? std::vector<double>{0.0} : std::vector<double>{0.0, sigma / 2.0, sigma}) {
        auto r = probe_commutator_constant({s, sigma, alpha}, c.verify.probe_samples, n_max, c.verify.seed);
        r.check_name = tagged("commutator_constant", "s=" + fmt17(s) + ",sigma=" + fmt17(sigma) + ",alpha=" + fmt17(alpha));
        out.push_back(r);
      }
}

void scaling_suite(const RunConfig& c, std::vector<VerificationReport>& out) {
  const auto f0 = SpectralField::cosines({{1, 0.05}, {2, 0.025}}, c.solver.cutoff);
  SolverConfig cfg = c.solver;
  cfg.dt = c.verify.scaling_dt;
  const auto study = scaling_refinement(f0, 2, 0.5, cfg, c.verify.refinement_levels);
  auto fine = VerificationReport::inequality("scaling_family", study.errors.back(), 0.0, 1e-6);
  fine.with("dt", study.dts.back()).with("lambda", 2.0);
  out.push_back(fine);
  auto order = VerificationReport::at_least("scaling_refinement_order", study.min_order(), 3.7, 0.0);
  order.with("max_order", study.max_order()).with("coarsest_dt", study.dts.front());
  out.push_back(order);
}

void energy_suite(const RunConfig& c, std::vector<VerificationReport>& out) {
  const int n_max = c.solver.cutoff;
  SolverConfig cfg = c.solver;
  cfg.dt = 4e-3;
  cfg.horizon = 0.5;
  cfg.record_every = 1;
  cfg.linear_only = false;
  const auto f0 = SpectralField::cosines({{1, 0.05}, {2, 0.05}, {3, 0.05}}, n_max);
  const auto study = energy_refinement(f0, cfg, 1.5, c.verify.refinement_levels);
  double worst = 2.0;
  for (double o : study.orders)
    if (std::abs(o - 2.0) > std::abs(worst - 2.0)) worst = o;
  auto order = VerificationReport::identity("energy_identity_order", worst, 2.0, 0.3);
  order.with("min_order", study.min_order()).with("max_order", study.max_order());
  out.push_back(order);

  SolverConfig lin = cfg;
  lin.linear_only = true;
  const auto single = simulate(SpectralField::cosines({{2, 1.0}}, n_max), lin);
  auto exact = check_energy_identity(single, 1.5, 1e-12);
  exact.check_name = "energy_identity_linear_single_mode";
  out.push_back(exact);

  cfg.dt = 1e-3;
  const auto nonlinear = simulate(f0, cfg);
  auto interp = interpolation_check(nonlinear.norms, 1.5);
  interp.check_name = "interpolation[nonlinear]";
  out.push_back(interp);
  auto interp_lin = interpolation_check(single.norms, 1.5);
  interp_lin.check_name = "interpolation[linear_single_mode]";
  out.push_back(interp_lin);
}

void support_suite(const RunConfig& c, std::vector<VerificationReport>& out) {
  const int n_max = c.verify.support_cutoff;
  std::mt19937_64 rng(c.verify.seed);
  double worst = 0.0;
  for (int i = 0; i < c.verify.support_inputs; ++i) {
    const double sigma = i % 2 == 0 ? 3.0 : 0.0;
    const auto phi = random_input(rng, n_max, i);
    const auto psi = random_input(rng, n_max, i + 2);
    worst = std::max(worst, check_support_monotonicity(phi, psi, sigma).measured);
  }
  auto r = VerificationReport::identity("support_monotonicity", worst, 0.0, 0.0);
  r.with("inputs", static_cast<double>(c.verify.support_inputs)).with("N", static_cast<double>(n_max));
  out.push_back(r);
}

// --- shared command plumbing ------------------------------------------------

struct Loaded {
  RunConfig config;
  fs::path dir;
  RunManifest manifest;
};

std::optional<Loaded> load(const std::string& command, const std::string& config_path,
                           const std::optional<std::string>& out_dir, std::ostream& err) {
  try {
    Loaded l{load_config(config_path), {}, {}};
    l.dir = out_dir ? *out_dir : l.config.outputs.dir;
    l.manifest.command = command;
    l.manifest.config_echo = echo_config(l.config);
    l.manifest.datum_spec = describe_datum(l.config.datum);
    l.manifest.output_dir = l.dir.string();
    return l;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return std::nullopt;
  }
}

void write_trajectory(const Loaded& l, const Trajectory& traj, RunManifest& m) {
  write_artifact(l.dir, "config.ini", l.manifest.config_echo, m);
  write_artifact(l.dir, "metadata.json", metadata_json(traj, l.config), m);
  write_artifact(l.dir, "trace.csv", trace_csv(traj.norms), m);
  if (l.config.outputs.snapshots) write_artifact(l.dir, "snapshots.csv", snapshots_csv(traj), m);
  m.flags["termination"] = to_string(traj.termination);
  m.flags["final_time"] = fmt17(traj.final_time());
}

int termination_code(Termination t) {
  switch (t) {
    case Termination::completed: return kExitOk;
    case Termination::blowup_detected: return kExitBlowup;
    case Termination::under_resolved: return kExitUnderResolved;
  }
  return kExitUsage;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

std::vector<VerificationReport> run_suite(const std::string& suite, const RunConfig& config) {
  if (std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
    throw std::invalid_argument("unknown suite '" + suite + "'");
  std::vector<VerificationReport> out;
  const bool all = suite == "all";
  if (all || suite == "support") support_suite(config, out);
  if (all || suite == "commutator") commutator_suite(config, out);
  if (all || suite == "propagator") propagator_suite(config, out);
  if (all || suite == "scaling") scaling_suite(config, out);
  if (all || suite == "energy") energy_suite(config, out);
  return out;
}

int cmd_simulate(const std::string& config_path, const std::optional<std::string>& out_dir, std::ostream& log,
                 std::ostream& err) {
  auto l = load("simulate", config_path, out_dir, err);
  if (!l) return kExitUsage;
  try {
    const auto start = Clock::now();
    const auto traj = simulate(build_datum(l->config), l->config.solver);
    l->manifest.timings.emplace_back("simulate", seconds_since(start));

    const auto write_start = Clock::now();
    write_trajectory(*l, traj, l->manifest);
    l->manifest.timings.emplace_back("write", seconds_since(write_start));
    write_manifest(l->dir, l->manifest);

    log << "simulate: " << to_string(traj.termination) << " at t = " << fmt17(traj.final_time()) << " after "
        << traj.steps << " steps; output in " << l->dir.string() << "\n";
    return termination_code(traj.termination);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_picard(const std::string& config_path, const std::optional<std::string>& out_dir, std::ostream& log,
               std::ostream& err) {
  auto l = load("picard", config_path, out_dir, err);
  if (!l) return kExitUsage;
  try {
    const auto& c = l->config;
    const auto start = Clock::now();
    const auto [traj, diag] = picard_solve(build_datum(c), c.solver.horizon, c.picard_tol, c.picard_maxit, c.solver);
    l->manifest.timings.emplace_back("picard", seconds_since(start));

    const auto write_start = Clock::now();
    write_trajectory(*l, traj, l->manifest);
    write_artifact(l->dir, "picard.csv", picard_csv(diag), l->manifest);
    l->manifest.timings.emplace_back("write", seconds_since(write_start));
    l->manifest.flags["picard_converged"] = diag.converged ? "true" : "false";
    l->manifest.flags["picard_iterates"] = std::to_string(diag.iterate_count);
    write_manifest(l->dir, l->manifest);

    log << "picard: " << (diag.converged ? "converged" : "non_contraction") << " after " << diag.iterate_count
        << " iterates, max contraction factor " << fmt17(diag.max_contraction_factor()) << "\n";
    return diag.converged ? kExitOk : kExitNonContraction;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_verify(const std::string& suite, const std::string& config_path, const std::optional<std::string>& out_dir,
               std::ostream& log, std::ostream& err) {
  if (std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end()) {
    err << "error: unknown suite '" << suite << "' (expected all, propagator, commutator, scaling, energy or support)\n";
    return kExitUsage;
  }
  auto l = load("verify " + suite, config_path, out_dir, err);
  if (!l) return kExitUsage;
  try {
    const auto start = Clock::now();
    const auto reports = run_suite(suite, l->config);
    l->manifest.timings.emplace_back("verify", seconds_since(start));

    write_artifact(l->dir, "config.ini", l->manifest.config_echo, l->manifest);
    write_artifact(l->dir, "reports.json", reports_json(reports), l->manifest);
    write_artifact(l->dir, "reports.csv", reports_csv(reports), l->manifest);

    std::vector<std::string> failed;
    for (const auto& r : reports) {
      log << (r.passed ? "PASS " : "FAIL ") << r.check_name << "  measured=" << fmt17(r.measured)
          << " bound=" << fmt17(r.bound_or_target) << " ratio=" << fmt17(r.ratio()) << "\n";
      if (!r.passed) failed.push_back(r.check_name);
    }
    l->manifest.flags["failed_checks"] = std::to_string(failed.size());
    write_manifest(l->dir, l->manifest);
    if (!failed.empty()) {
      err << "verification failed:";
      for (const auto& name : failed) err << " " << name;
      err << "\n";
      return kExitVerificationFailure;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_sweep(const std::string& config_path, const std::optional<std::string>& out_dir, std::ostream& log,
              std::ostream& err) {
  auto l = load("sweep", config_path, out_dir, err);
  if (!l) return kExitUsage;
  const auto& amplitudes = l->config.datum.amplitudes;
  if (amplitudes.empty()) {
    err << "error: datum.amplitudes: empty amplitude list\n";
    return kExitUsage;
  }
  if (std::adjacent_find(amplitudes.begin(), amplitudes.end(), [](double a, double b) { return b <= a; }) !=
      amplitudes.end()) {
    err << "error: datum.amplitudes: amplitudes must be strictly increasing\n";
    return kExitUsage;
  }
  try {
    const auto start = Clock::now();
    const auto table = smallness_sweep(build_datum(l->config), amplitudes, l->config.solver.horizon, l->config.solver);
    l->manifest.timings.emplace_back("sweep", seconds_since(start));

    const std::string bracket = sweep_bracket_line(table);
    write_artifact(l->dir, "config.ini", l->manifest.config_echo, l->manifest);
    write_artifact(l->dir, "sweep.csv", sweep_csv(table), l->manifest);
    write_artifact(l->dir, "bracket.txt", bracket + "\n", l->manifest);
    l->manifest.flags["calibration"] = "empirical";
    write_manifest(l->dir, l->manifest);
    log << bracket << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int emit_plot_data(const std::string& traj_dir, const std::optional<std::string>& out_dir, std::ostream& log,
                   std::ostream& err) {
  const fs::path src(traj_dir);
  std::ifstream trace(src / "trace.csv");
  if (!trace) {
    err << "error: missing trace file " << (src / "trace.csv").string() << "\n";
    return kExitUsage;
  }
  std::string header;
  std::getline(trace, header);
  const auto columns = split_csv_line(header);
  const std::vector<std::string> expected = {"t", "h32", "h94", "h3", "l4_h94"};
  if (columns != expected) {
    err << "error: " << (src / "trace.csv").string() << ": unexpected header '" << header << "'\n";
    return kExitUsage;
  }

  std::string h32, h94, h3;
  std::string line;
  std::string last_t = "0";
  int rows = 0;
  while (std::getline(trace, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != expected.size()) {
      err << "error: " << (src / "trace.csv").string() << ": malformed row " << rows + 2 << "\n";
      return kExitUsage;
    }
    h32 += f[0] + " " + f[1] + "\n";
    h94 += f[0] + " " + f[2] + "\n";
    h3 += f[0] + " " + f[3] + "\n";
    last_t = f[0];
    ++rows;
  }

  std::string termination = "unknown";
  if (std::ifstream meta(src / "metadata.json"); meta) {
    try {
      termination = nlohmann::json::parse(meta).value("termination", "unknown");
    } catch (const nlohmann::json::exception& e) {
      err << "warning: could not read metadata.json: " << e.what() << "\n";
    }
  }

  const fs::path dir = out_dir ? fs::path(*out_dir) : src;
  RunManifest m;
  m.command = "plot-data";
  m.output_dir = dir.string();
  try {
    write_artifact(dir, "t_vs_h32.dat", h32, m);
    write_artifact(dir, "t_vs_h94.dat", h94, m);
    write_artifact(dir, "t_vs_h3.dat", h3, m);
    const std::string script =
        "set logscale y\n"
        "set xlabel 't'\n"
        "set ylabel 'norm'\n"
        "plot 't_vs_h32.dat' with lines title 'H^{3/2}', \\\n"
        "     't_vs_h94.dat' with lines title 'H^{9/4}', \\\n"
        "     't_vs_h3.dat' with lines title 'H^3'\n"
        "pause -1\n";
    write_artifact(dir, "plot.gp", script, m);
    m.flags["termination"] = termination;
    m.flags["truncated"] = termination == "completed" ? "false" : "true";
    m.flags["last_time"] = last_t;
    m.flags["rows"] = std::to_string(rows);
    write_manifest(dir, m, "plot_manifest.json");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  log << "plot-data: " << rows << " rows written to " << dir.string() << "\n";
  return kExitOk;
}

}  // namespace capspec::cli
