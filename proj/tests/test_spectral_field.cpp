#include "capspec/spectral_field.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numbers>

using namespace capspec;

TEST_CASE("set writes the conjugate partner and keeps mode 0 empty") {
  SpectralField v(4);
  v.set(3, Complex(1.5, -2.0));
  CHECK(v[3] == Complex(1.5, -2.0));
  CHECK(v[-3] == Complex(1.5, 2.0));
  v.set(-2, Complex(0.0, 1.0));
  CHECK(v[2] == Complex(0.0, -1.0));
  CHECK(v[0] == Complex{});
  CHECK_THROWS_AS(v.set(0, Complex(1.0, 0.0)), FieldError);
  CHECK_NOTHROW(v.set(0, Complex{}));
  CHECK_THROWS_AS(v.set(5, Complex(1.0, 0.0)), FieldError);
  CHECK(v[9] == Complex{});
  CHECK(hermitian_defect(v.coefficients()) == 0.0);
}

TEST_CASE("from_modes validates its input") {
  CHECK_THROWS_AS(SpectralField::from_modes({{5, Complex(1.0, 0.0)}}, 4), FieldError);
  CHECK_THROWS_AS(SpectralField::from_modes({{0, Complex(1.0, 0.0)}}, 4), FieldError);
  CHECK_THROWS_AS(SpectralField::from_modes({{2, Complex(1.0, 1.0)}, {-2, Complex(1.0, 1.0)}}, 4), FieldError);
  CHECK_THROWS_AS(SpectralField::from_modes({{2, Complex(1.0, 0.0)}, {2, Complex(2.0, 0.0)}}, 4), FieldError);

  const auto v = SpectralField::from_modes({{2, Complex(1.0, 1.0)}, {-2, Complex(1.0, -1.0)}, {1, Complex(0.5, 0.0)}}, 4);
  CHECK(v[-2] == Complex(1.0, -1.0));
  CHECK(v[-1] == Complex(0.5, 0.0));
}

TEST_CASE("cosines puts half the amplitude on each side") {
  const auto v = SpectralField::cosines({{1, 2.0}, {3, -0.5}}, 4);
  CHECK(v[1] == Complex(1.0, 0.0));
  CHECK(v[-1] == Complex(1.0, 0.0));
  CHECK(v[3] == Complex(-0.25, 0.0));
  CHECK(v[2] == Complex{});
}

TEST_CASE("physical samples agree with direct trigonometric sums") {
  std::mt19937_64 rng(1);
  const auto v = oracle::gaussian(rng, 7, 1, 7);
  const int m = 20;
  const auto fast = evaluate_physical(v, m);
  const auto ref = oracle::synthesize(oracle::coeffs(v), 7, m);
  for (int j = 0; j < m; ++j) {
    CHECK(fast[j] == doctest::Approx(ref[j].real()).epsilon(1e-13));
    CHECK(std::abs(ref[j].imag()) < 1e-12);
  }

  const auto c = evaluate_physical(SpectralField::cosines({{2, 1.0}}, 3), 8);
  for (int j = 0; j < 8; ++j) CHECK(c[j] == doctest::Approx(std::cos(2.0 * 2.0 * std::numbers::pi * j / 8)));
}

TEST_CASE("sampling below 2N+2 points is an aliasing error") {
  const SpectralField v = SpectralField::cosines({{4, 1.0}}, 4);
  CHECK_THROWS_AS(evaluate_physical(v, 9), AliasingError);
  CHECK_NOTHROW(evaluate_physical(v, 10));
}

TEST_CASE("from_physical inverts evaluate_physical and drops the mean") {
  std::mt19937_64 rng(2);
  const auto v = oracle::gaussian(rng, 10, 1, 10);
  auto samples = evaluate_physical(v, 32);
  for (auto& s : samples) s += 3.0;
  const auto back = from_physical(samples, 10);
  CHECK(max_coefficient_difference(back, v) < 1e-14);
  CHECK(back[0] == Complex{});
}

TEST_CASE("Parseval under the 1/2π normalization") {
  std::mt19937_64 rng(3);
  const auto v = oracle::gaussian(rng, 12, 1, 12);
  const int m = 64;
  const auto x = evaluate_physical(v, m);
  double physical = 0.0;
  for (double s : x) physical += s * s;
  physical *= 2.0 * std::numbers::pi / m;  // ∫ v² dx
  double spectral = 0.0;
  for (int n = -12; n <= 12; ++n) spectral += std::norm(v[n]);
  CHECK(physical / (2.0 * std::numbers::pi) == doctest::Approx(spectral).epsilon(1e-13));
}

TEST_CASE("resized truncates or pads") {
  const auto v = SpectralField::cosines({{1, 1.0}, {5, 1.0}}, 6);
  const auto small = v.resized(3);
  CHECK(small.cutoff() == 3);
  CHECK(small[5] == Complex{});
  CHECK(small[1] == v[1]);
  const auto big = v.resized(10);
  CHECK(max_coefficient_difference(big, v) == 0.0);
}

TEST_CASE("arithmetic keeps Hermitian symmetry") {
  std::mt19937_64 rng(4);
  const auto a = oracle::gaussian(rng, 8, 1, 8);
  const auto b = oracle::gaussian(rng, 8, 2, 5);
  const auto c = 2.5 * a - b + a * 0.5;
  CHECK(hermitian_defect(c.coefficients()) == 0.0);
  CHECK(std::abs(c[3] - (3.0 * a[3] - b[3])) < 1e-14);
  const auto padded = SpectralField(4) + a;
  CHECK(padded.cutoff() == 8);
  CHECK(max_coefficient_difference(padded, a) == 0.0);
}

TEST_CASE("non-finite coefficients are detected") {
  SpectralField v(3);
  CHECK(v.all_finite());
  v.set(2, Complex(std::numeric_limits<double>::quiet_NaN(), 0.0));
  CHECK_FALSE(v.all_finite());
}
