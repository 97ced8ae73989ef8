#include "capspec/commutator.hpp"

#include "capspec/fft.hpp"
#include "capspec/operators.hpp"

#include <cmath>
#include <vector>

namespace capspec {
namespace {

int sgn(int n) { return (n > 0) - (n < 0); }

void require_common_cutoff(const SpectralField& phi, const SpectralField& psi) {
  if (phi.cutoff() != psi.cutoff())
    throw FieldError("commutator: fields have different cutoffs (" + std::to_string(phi.cutoff()) +
                     " vs " + std::to_string(psi.cutoff()) + ")");
}

std::vector<double> power_table(int cutoff, double sigma) {
  std::vector<double> t(static_cast<std::size_t>(cutoff + 1));
  t[0] = 0.0;  // |0|^σ multiplies ψ̂(0) = 0 anyway
  for (int m = 1; m <= cutoff; ++m) t[static_cast<std::size_t>(m)] = std::pow(m, sigma);
  return t;
}

// Σ_k (-sgn n + sgn(n-k)) |n-k|^σ φ̂(k) ψ̂(n-k) over every admissible k,
// without the leading factor i.
Complex direct_sum(const SpectralField& phi, const SpectralField& psi, const std::vector<double>& pw,
                   int n) {
  const int cutoff = phi.cutoff();
  const int lo = std::max(-cutoff, n - cutoff);
  const int hi = std::min(cutoff, n + cutoff);
  Complex acc{};
  for (int k = lo; k <= hi; ++k) {
    const int m = n - k;
    const double factor = static_cast<double>(-sgn(n) + sgn(m)) * pw[static_cast<std::size_t>(std::abs(m))];
    acc += factor * (phi[k] * psi[m]);
  }
  return acc;
}

Complex times_i(Complex z) { return {-z.imag(), z.real()}; }

}  // namespace

int dealias_grid(int cutoff) { return fft::good_size(min_dealias_grid(cutoff)); }

Complex commutator_direct_mode(const SpectralField& phi, const SpectralField& psi, double sigma, int n) {
  require_common_cutoff(phi, psi);
  const auto pw = power_table(phi.cutoff(), sigma);
  return times_i(direct_sum(phi, psi, pw, n));
}

SpectralField commutator_direct_serial(const SpectralField& phi, const SpectralField& psi, double sigma) {
  require_common_cutoff(phi, psi);
  const int cutoff = phi.cutoff();
  const auto pw = power_table(cutoff, sigma);
  SpectralField out(cutoff);
  for (int n = 1; n <= cutoff; ++n) out.set(n, times_i(direct_sum(phi, psi, pw, n)));
  return out;
}

SpectralField commutator_direct(const SpectralField& phi, const SpectralField& psi, double sigma) {
  require_common_cutoff(phi, psi);
  const int cutoff = phi.cutoff();
  const auto pw = power_table(cutoff, sigma);
  std::vector<Complex> positive(static_cast<std::size_t>(cutoff));
#pragma omp parallel for schedule(dynamic, 8)
  for (int n = 1; n <= cutoff; ++n)
    positive[static_cast<std::size_t>(n - 1)] = times_i(direct_sum(phi, psi, pw, n));
  return SpectralField::from_positive(positive);
}

SpectralField commutator_fast(const SpectralField& phi, const SpectralField& psi, double sigma,
                              int grid_size) {
  require_common_cutoff(phi, psi);
  const int cutoff = phi.cutoff();
  if (grid_size < min_dealias_grid(cutoff))
    throw AliasingError("commutator_fast: grid of " + std::to_string(grid_size) +
                        " points is below the dealiasing requirement " +
                        std::to_string(min_dealias_grid(cutoff)) + " for cutoff " +
                        std::to_string(cutoff));
  if (cutoff == 0) return SpectralField(0);

  const auto g = lambda_pow(psi, sigma);
  const auto hg = hilbert(g);

  const auto m = static_cast<std::size_t>(grid_size);
  std::vector<Complex> half(static_cast<std::size_t>(cutoff + 1));
  auto physical = [&](const SpectralField& v) {
    for (int n = 1; n <= cutoff; ++n) half[static_cast<std::size_t>(n)] = v[n];
    std::vector<double> out(m);
    fft::to_physical(half, out);
    return out;
  };
  const auto phi_x = physical(phi);
  const auto g_x = physical(g);
  const auto hg_x = physical(hg);

  std::vector<double> p1(m), p2(m);
  for (std::size_t j = 0; j < m; ++j) {
    p1[j] = phi_x[j] * g_x[j];
    p2[j] = phi_x[j] * hg_x[j];
  }
  std::vector<Complex> s1(half.size()), s2(half.size());
  fft::to_spectral(p1, s1);
  fft::to_spectral(p2, s2);

  // H(φg) - φ(Hg) on n > 0: -i·P1(n) - P2(n).
  SpectralField out(cutoff);
  for (int n = 1; n <= cutoff; ++n) {
    const auto a = s1[static_cast<std::size_t>(n)];
    out.set(n, Complex(a.imag(), -a.real()) - s2[static_cast<std::size_t>(n)]);
  }
  return out;
}

SpectralField commutator_fast(const SpectralField& phi, const SpectralField& psi, double sigma) {
  return commutator_fast(phi, psi, sigma, dealias_grid(phi.cutoff()));
}

SpectralField bilinear_forcing(const SpectralField& phi, const SpectralField& psi) {
  return dx(commutator_fast(phi, psi, 3.0));
}

SpectralField nonlinearity(const SpectralField& f) { return bilinear_forcing(f, f); }

SpectralField nonlinearity_direct(const SpectralField& f) { return dx(commutator_direct(f, f, 3.0)); }

}  // namespace capspec
