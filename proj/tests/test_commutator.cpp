#include "capspec/analysis.hpp"
#include "capspec/commutator.hpp"
#include "capspec/operators.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace capspec;

namespace {

double max_diff(const SpectralField& v, const std::vector<Complex>& ref) {
  const int n_max = v.cutoff();
  double m = 0.0;
  for (int n = -n_max; n <= n_max; ++n) {
    if (n == 0) continue;
    m = std::max(m, std::abs(v[n] - ref[static_cast<std::size_t>(n + n_max)]));
  }
  return m;
}

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

TEST_CASE("direct sum and FFT path match the physical-space oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    const int n_max = 6 + trial;
    const auto phi = oracle::gaussian(rng, n_max, 1, n_max, trial % 3 == 1 ? 2.0 : 0.0);
    const auto psi = oracle::gaussian(rng, n_max, 1 + trial % 4, n_max);
    for (double sigma : {0.0, 1.0, 3.0}) {
      const auto ref = oracle::commutator_physical(phi, psi, sigma);
      const double scale = std::max(1.0, max_abs(ref));
      CHECK(max_diff(commutator_direct(phi, psi, sigma), ref) < 1e-11 * scale);
      CHECK(max_diff(commutator_fast(phi, psi, sigma), ref) < 1e-11 * scale);
    }
  }
}

TEST_CASE("[H, cos 3x] Lambda^3 cos 2x = 8 sin x") {
  const auto phi = SpectralField::cosines({{3, 1.0}}, 4);
  const auto psi = SpectralField::cosines({{2, 1.0}}, 4);
  const auto direct = commutator_direct(phi, psi, 3.0);
  CHECK(std::abs(direct[1] - Complex(0.0, -4.0)) < 1e-12);
  CHECK(std::abs(direct[-1] - Complex(0.0, 4.0)) < 1e-12);
  for (int n = 2; n <= 4; ++n) CHECK(direct[n] == Complex{});
  CHECK(max_coefficient_difference(commutator_fast(phi, psi, 3.0), direct) < 1e-12);
}

TEST_CASE("commutator with cos x vanishes on every nonzero mode") {
  std::mt19937_64 rng(12);
  const auto phi = SpectralField::cosines({{1, 1.0}}, 8);
  const auto psi = oracle::gaussian(rng, 8, 1, 8);
  CHECK(commutator_direct(phi, psi, 3.0).max_abs_coefficient() == 0.0);
  CHECK(commutator_fast(phi, psi, 3.0).max_abs_coefficient() < 1e-12);
  CHECK(commutator_direct(phi, SpectralField::cosines({{5, 1.0}}, 8), 3.0).max_abs_coefficient() == 0.0);
  for (double a : {0.1, 1.0, 7.0}) CHECK(nonlinearity(SpectralField::cosines({{1, a}}, 8)).max_abs_coefficient() < 1e-12);
}

TEST_CASE("raw mode-0 value is exposed but zeroed in field outputs") {
  // φ = cos x, ψ = cos x, σ = 0: n = 0 draws on k = ±1 with factor -sgn(k).
  const auto c = SpectralField::cosines({{1, 1.0}}, 3);
  const Complex raw = commutator_direct_mode(c, c, 0.0, 0);
  CHECK(raw == Complex{});  // the ±1 contributions cancel for a real cosine
  const auto s = hilbert(c);
  CHECK(std::abs(commutator_direct_mode(c, s, 0.0, 0)) > 0.1);
  CHECK(commutator_direct(c, s, 0.0)[0] == Complex{});
  CHECK(commutator_fast(c, s, 0.0)[0] == Complex{});
}

TEST_CASE("bilinearity, Hermitian output and zero mean") {
  std::mt19937_64 rng(13);
  const auto phi = oracle::gaussian(rng, 10, 1, 10);
  const auto psi = oracle::gaussian(rng, 10, 1, 10);
  const auto base = commutator_fast(phi, psi, 3.0);
  const auto scaled = commutator_fast(2.0 * phi, -0.5 * psi, 3.0);
  CHECK(max_coefficient_difference(scaled, -1.0 * base) < 1e-12 * base.max_abs_coefficient());
  CHECK(hermitian_defect(base.coefficients()) == 0.0);
  CHECK(hermitian_defect(commutator_direct(phi, psi, 3.0).coefficients()) == 0.0);
  CHECK(commutator_fast(SpectralField(10), psi, 3.0).max_abs_coefficient() == 0.0);
}

TEST_CASE("output at mode n only uses phi at |k| > |n|") {
  const auto phi = SpectralField::cosines({{5, 1.0}}, 12);
  std::mt19937_64 rng(14);
  const auto psi = oracle::gaussian(rng, 12, 1, 12);
  const auto out = commutator_direct(phi, psi, 3.0);
  for (int n = 5; n <= 12; ++n) CHECK(out[n] == Complex{});
  CHECK(out.max_abs_coefficient() > 0.0);

  for (int trial = 0; trial < 5; ++trial) {
    const auto a = oracle::gaussian(rng, 16, 1, 16);
    const auto b = oracle::gaussian(rng, 16, 1, 16);
    CHECK(check_support_monotonicity(a, b, trial % 2 ? 0.0 : 3.0).passed);
  }
  CHECK(check_support_monotonicity(phi, SpectralField(12), 3.0).passed);
}

TEST_CASE("grid below the dealiasing requirement is rejected") {
  const auto v = SpectralField::cosines({{2, 1.0}, {6, 1.0}}, 8);
  CHECK(min_dealias_grid(8) == 25);
  CHECK(dealias_grid(8) >= 25);
  CHECK_THROWS_AS(commutator_fast(v, v, 3.0, 24), AliasingError);
  const auto exact = commutator_fast(v, v, 3.0, 25);
  CHECK(max_coefficient_difference(exact, commutator_direct(v, v, 3.0)) < 1e-12 * exact.max_abs_coefficient());
  CHECK_THROWS_AS(commutator_fast(v, SpectralField(4), 3.0), FieldError);
}

TEST_CASE("nonlinearity of cos 3x + cos 2x: the (3,2) pair gives 8 cos x on mode 1") {
  const auto f = SpectralField::cosines({{2, 1.0}, {3, 1.0}}, 6);
  const auto pair = dx(commutator_direct(SpectralField::cosines({{3, 1.0}}, 6), SpectralField::cosines({{2, 1.0}}, 6), 3.0));
  CHECK(std::abs(pair[1] - Complex(4.0, 0.0)) < 1e-12);
  CHECK(max_coefficient_difference(nonlinearity(f), nonlinearity_direct(f)) < 1e-11);
}
