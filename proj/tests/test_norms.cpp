#include "capspec/evolution.hpp"
#include "capspec/norms.hpp"
#include "capspec/operators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numbers>

using namespace capspec;

TEST_CASE("Sobolev norms of single modes") {
  const auto c1 = SpectralField::cosines({{1, 1.0}}, 4);
  for (double s : {0.0, 0.5, 1.5, 3.0}) CHECK(hs_norm(c1, s) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(hs_norm(SpectralField::cosines({{2, 1.0}}, 4), 1.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(hs_norm(SpectralField(4), 1.5) == 0.0);
}

TEST_CASE("Hilbert transform is an isometry and Lambda shifts the exponent") {
  std::mt19937_64 rng(21);
  const auto v = oracle::gaussian(rng, 20, 1, 20);
  for (double s : {0.0, 0.75, 1.5, 2.25}) {
    CHECK(hs_norm(hilbert(v), s) == hs_norm(v, s));
    CHECK(hs_norm(lambda_pow(v, 0.75), s) == doctest::Approx(hs_norm(v, s + 0.75)).epsilon(1e-14));
  }
  CHECK(hs_inner(v, v, 1.5) == doctest::Approx(hs_norm(v, 1.5) * hs_norm(v, 1.5)).epsilon(1e-14));
}

TEST_CASE("tail fraction") {
  CHECK(tail_fraction(SpectralField::cosines({{1, 1.0}, {3, 1.0}}, 8), 3) == 0.0);
  CHECK(tail_fraction(SpectralField::cosines({{8, 1.0}}, 8), 5) == 1.0);
  // Equal Ḣ^{3/2} energy: a₂²·8 = a₁²·1.
  const auto eq = SpectralField::cosines({{1, 1.0}, {2, 1.0 / std::sqrt(8.0)}}, 4);
  CHECK(tail_fraction(eq, 1) == doctest::Approx(0.5));
  CHECK(tail_fraction(SpectralField(4), 1) == 0.0);
}

TEST_CASE("time norms on constant and sampled series") {
  const std::vector<double> t = {0.0, 0.25, 0.5, 1.0};
  const std::vector<double> c = {3.0, 3.0, 3.0, 3.0};
  CHECK(lp_time_norm(t, c, 4.0) == doctest::Approx(3.0));
  const std::vector<double> g = {1.0, 4.0, 2.0, 0.5};
  CHECK(lp_time_norm(t, g, kInfinity) == 4.0);
  CHECK_THROWS_AS(lp_time_norm(std::vector<double>{}, std::vector<double>{}, 2.0), std::invalid_argument);

  NormTrace trace;
  const auto f = SpectralField::cosines({{2, 1.0}}, 4);
  for (double s : t) trace.record(s, f);
  CHECK(lpt_hs_norm(trace, 4.0, 2.25) == doctest::Approx(hs_norm(f, 2.25)));
  CHECK(lpt_hs_norm(trace, kInfinity, 3.0) == doctest::Approx(hs_norm(f, 3.0)));
  CHECK_THROWS_AS(lpt_hs_norm(NormTrace{}, 4.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(trace.record(0.5, f), std::invalid_argument);
  CHECK_THROWS_AS(trace.column(0.3), std::invalid_argument);
}

TEST_CASE("running accumulators are nondecreasing trapezoid sums") {
  NormTrace trace;
  const auto f0 = SpectralField::cosines({{1, 1.0}, {2, 0.3}}, 4);
  for (int m = 0; m <= 50; ++m) trace.record(0.02 * m, semigroup(f0, 0.02 * m));
  const auto acc = trace.accumulator(2.0, 3.0);
  for (std::size_t i = 1; i < acc.size(); ++i) CHECK(acc[i] >= acc[i - 1]);
  const auto col = trace.column(3.0);
  double manual = 0.0;
  for (std::size_t i = 1; i < col.size(); ++i) manual += 0.01 * (col[i] * col[i] + col[i - 1] * col[i - 1]);
  CHECK(acc.back() == doctest::Approx(manual).epsilon(1e-14));
}

TEST_CASE("trapezoid quadrature converges at second order") {
  // ‖e^{-tΛ³} cos 2x‖_{9/4}^4 = 128 e^{-32t}, ∫₀^{1/4} = 4(1 - e^{-8}).
  const auto f0 = SpectralField::cosines({{2, 1.0}}, 4);
  const double exact = std::pow(4.0 * (1.0 - std::exp(-8.0)), 0.25);
  std::vector<double> errors;
  for (int steps : {50, 100, 200}) {
    NormTrace trace;
    for (int m = 0; m <= steps; ++m) trace.record(0.25 * m / steps, semigroup(f0, 0.25 * m / steps));
    errors.push_back(std::abs(lpt_hs_norm(trace, 4.0, 2.25) - exact));
  }
  CHECK(std::log2(errors[0] / errors[1]) == doctest::Approx(2.0).epsilon(0.02));
  CHECK(std::log2(errors[1] / errors[2]) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("interpolation check") {
  SUBCASE("equality for a constant single-mode trajectory") {
    NormTrace trace;
    const auto f = SpectralField::cosines({{3, 0.7}}, 4);
    for (int m = 0; m <= 10; ++m) trace.record(0.1 * m, f);
    const auto r = interpolation_check(trace, 1.5);
    CHECK(r.passed);
    CHECK(std::abs(r.measured - r.bound_or_target) <= 1e-10 * r.bound_or_target);
  }
  SUBCASE("zero trajectory") {
    NormTrace trace;
    for (int m = 0; m <= 3; ++m) trace.record(m, SpectralField(4));
    const auto r = interpolation_check(trace, 1.5);
    CHECK(r.passed);
    CHECK(r.measured == 0.0);
  }
  SUBCASE("strict for a multi-mode decaying trajectory") {
    NormTrace trace;
    std::mt19937_64 rng(22);
    const auto f0 = oracle::gaussian(rng, 10, 1, 10);
    for (int m = 0; m <= 200; ++m) trace.record(0.001 * m, semigroup(f0, 0.001 * m));
    const auto r = interpolation_check(trace, 1.5);
    CHECK(r.passed);
    CHECK(r.measured < r.bound_or_target);
  }
}

TEST_CASE("difference trace") {
  const std::vector<double> t = {0.0, 0.5, 1.0};
  const auto a = SpectralField::cosines({{1, 1.0}}, 3);
  const auto b = SpectralField::cosines({{1, 0.5}}, 3);
  const std::vector<SpectralField> sa = {a, a, a}, sb = {b, b, b};
  const auto d = difference_trace(t, sa, sb, {1.5});
  CHECK(d.column(1.5)[1] == doctest::Approx(hs_norm(a - b, 1.5)));
}
