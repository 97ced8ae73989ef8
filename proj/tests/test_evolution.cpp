#include "capspec/analysis.hpp"
#include "capspec/commutator.hpp"
#include "capspec/evolution.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace capspec;

TEST_CASE("config validation names the field") {
  auto message = [](SolverConfig c) {
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  SolverConfig c;
  CHECK(message(c).empty());
  c.dt = 0.0;
  CHECK(message(c).rfind("dt:", 0) == 0);
  c = {};
  c.horizon = -1.0;
  CHECK(message(c).rfind("T:", 0) == 0);
  c = {};
  c.tail_alarm = 1.0;
  CHECK(message(c).rfind("tail_alarm:", 0) == 0);
  c = {};
  c.blowup_threshold = 0.0;
  CHECK(message(c).rfind("blowup_threshold:", 0) == 0);
  CHECK_THROWS_AS(parse_integrator("euler"), std::invalid_argument);
  CHECK(parse_integrator("ifrk4") == Integrator::ifrk4);
}

TEST_CASE("semigroup") {
  const auto c = SpectralField::cosines({{2, 1.0}}, 4);
  CHECK(semigroup(c, 0.0) == c);
  CHECK(semigroup(c, 0.1)[2].real() == doctest::Approx(0.5 * std::exp(-0.8)).epsilon(1e-15));
  std::mt19937_64 rng(31);
  const auto v = oracle::gaussian(rng, 12, 1, 12);
  CHECK(max_coefficient_difference(semigroup(semigroup(v, 0.01), 0.02), semigroup(v, 0.03)) < 1e-15);
}

TEST_CASE("linear-only steps equal the semigroup") {
  std::mt19937_64 rng(32);
  const auto v = oracle::gaussian(rng, 16, 1, 16);
  for (auto integ : {Integrator::etdrk4, Integrator::ifrk4}) {
    const auto s = step(v, 1e-3, integ, true);
    CHECK(max_coefficient_difference(s, semigroup(v, 1e-3)) <= 1e-14 * v.max_abs_coefficient());
  }
}

TEST_CASE("a single cosine mode evolves linearly") {
  const auto f = SpectralField::cosines({{1, 0.7}}, 8);
  for (auto integ : {Integrator::etdrk4, Integrator::ifrk4})
    CHECK(max_coefficient_difference(step(f, 0.01, integ), semigroup(f, 0.01)) < 1e-15);
}

TEST_CASE("two-mode closed-form solution") {
  const oracle::TwoMode exact{0.3, 0.4};
  SolverConfig c;
  c.cutoff = 8;
  c.dt = 5e-3;
  c.horizon = 1.0;
  c.record_every = 20;
  for (auto integ : {Integrator::etdrk4, Integrator::ifrk4}) {
    c.integrator = integ;
    const auto traj = simulate(SpectralField::cosines({{1, exact.a1}, {2, exact.a2}}, 8), c);
    REQUIRE(traj.termination == Termination::completed);
    for (std::size_t m = 0; m < traj.snapshots.size(); ++m) {
      const double t = traj.snapshot_times[m];
      const auto& f = traj.snapshots[m];
      CHECK(2.0 * f[1].real() == doctest::Approx(exact.mode1(t)).epsilon(1e-8));
      CHECK(2.0 * f[2].real() == doctest::Approx(exact.mode2(t)).epsilon(1e-8));
      CHECK(std::abs(f[3]) < 1e-15);
      CHECK(f[0] == Complex{});
      CHECK(hermitian_defect(f.coefficients()) == 0.0);
    }
  }
}

TEST_CASE("simulate: zero datum, small datum, linear decay") {
  SolverConfig c;
  c.cutoff = 16;
  c.dt = 1e-3;
  c.horizon = 0.5;

  const auto zero = simulate(SpectralField(16), c);
  CHECK(zero.termination == Termination::completed);
  for (double v : zero.norms.column(1.5)) CHECK(v == 0.0);

  const auto small = simulate(SpectralField::cosines({{1, 0.01}, {2, 0.01}}, 16), c);
  CHECK(small.termination == Termination::completed);
  CHECK(decays_monotonically(small));
  CHECK(small.final_time() == doctest::Approx(0.5));

  c.linear_only = true;
  const auto lin = simulate(SpectralField::cosines({{2, 1.0}}, 16), c);
  const auto h = lin.norms.column(1.5);
  const auto& t = lin.norms.times();
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(h[i] == doctest::Approx(2.0 * std::exp(-8.0 * t[i])).epsilon(1e-13));
  CHECK(duhamel_residual(lin) < 1e-12);
}

TEST_CASE("simulate rejects data above the cutoff and clamps the last step") {
  SolverConfig c;
  c.cutoff = 4;
  c.dt = 0.03;
  c.horizon = 0.1;
  CHECK_THROWS_AS(simulate(SpectralField::cosines({{6, 1.0}}, 8), c), std::invalid_argument);
  const auto traj = simulate(SpectralField::cosines({{1, 0.1}}, 4), c);
  CHECK(traj.final_time() == 0.1);
  CHECK(traj.steps == 4);
  CHECK(time_grid(0.03, 0.1).size() == 5);
}

TEST_CASE("large data trips the blow-up threshold; broad data trips the tail alarm") {
  SolverConfig c;
  c.cutoff = 16;
  c.dt = 1e-3;
  c.horizon = 2.0;
  const auto big = simulate(SpectralField::cosines({{1, 10.0}, {2, 10.0}, {3, 10.0}}, 16), c);
  CHECK(big.termination == Termination::blowup_detected);
  CHECK(big.final_time() < 2.0);

  c.horizon = 0.01;
  const auto tail = simulate(SpectralField::cosines({{1, 0.01}, {16, 0.01}}, 16), c);
  CHECK(tail.termination == Termination::under_resolved);
  CHECK(tail.steps <= 1);
}

TEST_CASE("ETDRK4 converges at fourth order") {
  SolverConfig c;
  c.cutoff = 16;
  c.dt = 0.05;
  c.horizon = 1.0;
  const auto study = temporal_order(SpectralField::cosines({{1, 0.3}, {2, 0.3}, {3, 0.3}}, 16), c);
  CHECK(study.min_order() >= 3.7);
  CHECK(study.max_order() <= 4.3);
}

TEST_CASE("Duhamel weights integrate the exponential kernel exactly") {
  // Composite Simpson on ∫₀^h e^{-λ(h-s)} (a + (b-a)s/h) ds as the reference.
  const double h = 0.1, a = 1.3, b = -0.4;
  for (double z : {1e-8, 1e-3, 0.1, 0.3, 2.0, 40.0}) {
    const double lam = z / h;
    auto g = [&](double s) { return std::exp(-lam * (h - s)) * (a + (b - a) * s / h); };
    const int cells = 20000;
    const double w = h / cells;
    double acc = g(0.0) + g(h);
    for (int k = 1; k < cells; ++k) acc += (k % 2 ? 4.0 : 2.0) * g(k * w);
    const double exact = acc * w / 3.0;
    const double got = h * (duhamel_weight_left(z) * a + duhamel_weight_right(z) * b);
    CHECK(got == doctest::Approx(exact).epsilon(1e-11));
  }
  CHECK(duhamel_weight_left(0.0) == 0.5);
  CHECK(duhamel_weight_right(0.0) == 0.5);
}

TEST_CASE("forced linear solve") {
  SolverConfig c;
  c.cutoff = 12;
  c.dt = 2e-3;
  c.horizon = 0.2;
  std::mt19937_64 rng(33);
  const auto psi = simulate(oracle::gaussian(rng, 12, 1, 6) * 0.01, c);
  SolverConfig lin = c;
  lin.linear_only = true;
  const auto cos_x = simulate(SpectralField::cosines({{1, 1.0}}, 12), lin);
  const auto zero = simulate(SpectralField(12), c);

  SUBCASE("zero psi gives zero") {
    const auto u = forced_linear_solve(psi, zero);
    for (const auto& f : u.snapshots) CHECK(f.max_abs_coefficient() == 0.0);
  }
  SUBCASE("phi = cos x gives zero") {
    const auto u = forced_linear_solve(cos_x, psi);
    for (const auto& f : u.snapshots) CHECK(f.max_abs_coefficient() < 1e-13);
  }
  SUBCASE("Duhamel form of the full solution") {
    // f = e^{-tΛ³}f₀ + U(f, f) along a computed trajectory, up to the
    // second-order error of the piecewise-linear forcing.
    const auto u = forced_linear_solve(psi, psi);
    double worst = 0.0;
    for (std::size_t m = 0; m < u.snapshots.size(); ++m) {
      const auto lhs = psi.snapshots[m] - semigroup(psi.snapshots[0], psi.snapshot_times[m]);
      worst = std::max(worst, hs_norm(lhs - u.snapshots[m], 1.5));
    }
    CHECK(worst == doctest::Approx(duhamel_residual(psi)).epsilon(1e-12));
    SolverConfig fine = c;
    fine.dt = c.dt / 2;
    const double ratio = duhamel_residual(psi) / duhamel_residual(simulate(psi.snapshots[0], fine));
    CHECK(std::log2(ratio) == doctest::Approx(2.0).epsilon(0.1));
  }
  SUBCASE("grids must match") {
    SolverConfig other = c;
    other.dt = 4e-3;
    CHECK_THROWS_AS(forced_linear_solve(psi, simulate(SpectralField(12), other)), std::invalid_argument);
  }
}

TEST_CASE("energy identity for the forced linear problem converges at second order") {
  // φ, ψ on modes 1..4 under the linear flow keep U on modes 1..3, where the
  // finite-difference rate is resolved. U(0) = 0, so the window starts at
  // t = 0.05 to keep the logarithmic difference away from the zero energy.
  std::mt19937_64 rng(34);
  const auto phi0 = oracle::gaussian(rng, 12, 1, 4);
  const auto psi0 = oracle::gaussian(rng, 12, 1, 4);
  std::vector<double> residuals;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    SolverConfig c;
    c.cutoff = 12;
    c.dt = dt;
    c.horizon = 0.5;
    c.linear_only = true;
    const auto phi = simulate(phi0, c);
    const auto psi = simulate(psi0, c);
    const auto u = forced_linear_solve(phi, psi);
    const auto forcing = forcing_series(phi.snapshots, psi.snapshots);
    const auto skip = static_cast<std::size_t>(std::lround(0.05 / dt));
    residuals.push_back(energy_identity_residual(std::span(u.snapshot_times).subspan(skip),
                                                 std::span(u.snapshots).subspan(skip),
                                                 std::span(forcing).subspan(skip), 1.5));
  }
  CHECK(residuals[2] < 1e-3);
  CHECK(std::log2(residuals[0] / residuals[1]) == doctest::Approx(2.0).epsilon(0.15));
  CHECK(std::log2(residuals[1] / residuals[2]) == doctest::Approx(2.0).epsilon(0.15));
}
