#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// into the library's FFT or operator code.

#include "capspec/spectral_field.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using capspec::Complex;
using capspec::SpectralField;

inline int sgn(int n) { return (n > 0) - (n < 0); }

/// v(x_j) = Σ_n v̂(n) e^{inx_j} by direct summation, x_j = 2πj/M.
inline std::vector<Complex> synthesize(const std::vector<Complex>& coeffs, int cutoff, int m) {
  std::vector<Complex> out(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const double x = 2.0 * std::numbers::pi * j / m;
    Complex acc{};
    for (int n = -cutoff; n <= cutoff; ++n) acc += coeffs[static_cast<std::size_t>(n + cutoff)] * std::polar(1.0, n * x);
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

/// (1/M) Σ_j v_j e^{-inx_j} for |n| ≤ cutoff, by direct summation.
inline std::vector<Complex> analyze(const std::vector<Complex>& samples, int cutoff) {
  const int m = static_cast<int>(samples.size());
  std::vector<Complex> out(static_cast<std::size_t>(2 * cutoff + 1));
  for (int n = -cutoff; n <= cutoff; ++n) {
    Complex acc{};
    for (int j = 0; j < m; ++j) acc += samples[static_cast<std::size_t>(j)] * std::polar(1.0, -n * 2.0 * std::numbers::pi * j / m);
    out[static_cast<std::size_t>(n + cutoff)] = acc / static_cast<double>(m);
  }
  return out;
}

inline std::vector<Complex> coeffs(const SpectralField& v) { return {v.coefficients().begin(), v.coefficients().end()}; }

/// [H, φ]Λ^σψ = H(φ·g) - φ·Hg with g = Λ^σψ, products formed pointwise on a
/// 4N+2 grid and read back by a direct DFT. Returns coefficients n = -N..N.
inline std::vector<Complex> commutator_physical(const SpectralField& phi, const SpectralField& psi, double sigma) {
  const int n_max = phi.cutoff();
  const int m = 4 * n_max + 2;
  std::vector<Complex> g(static_cast<std::size_t>(2 * n_max + 1)), hg(g.size());
  for (int n = -n_max; n <= n_max; ++n) {
    const auto i = static_cast<std::size_t>(n + n_max);
    g[i] = n == 0 ? Complex{} : std::pow(std::abs(n), sigma) * psi[n];
    hg[i] = Complex(0.0, -sgn(n)) * g[i];
  }
  const auto phi_x = synthesize(coeffs(phi), n_max, m);
  const auto g_x = synthesize(g, n_max, m);
  const auto hg_x = synthesize(hg, n_max, m);
  std::vector<Complex> p(static_cast<std::size_t>(m)), q(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    p[static_cast<std::size_t>(j)] = phi_x[static_cast<std::size_t>(j)] * g_x[static_cast<std::size_t>(j)];
    q[static_cast<std::size_t>(j)] = phi_x[static_cast<std::size_t>(j)] * hg_x[static_cast<std::size_t>(j)];
  }
  const auto ph = analyze(p, n_max);
  const auto qh = analyze(q, n_max);
  std::vector<Complex> out(ph.size());
  for (int n = -n_max; n <= n_max; ++n) {
    const auto i = static_cast<std::size_t>(n + n_max);
    out[i] = Complex(0.0, -sgn(n)) * ph[i] - qh[i];
  }
  return out;
}

/// Hermitian Gaussian field on modes lo..hi.
inline SpectralField gaussian(std::mt19937_64& rng, int cutoff, int lo, int hi, double weight_power = 0.0) {
  std::normal_distribution<double> d;
  SpectralField v(cutoff);
  for (int n = lo; n <= hi; ++n) {
    const double w = std::pow(static_cast<double>(n), -weight_power);
    const double re = d(rng);
    const double im = d(rng);
    v.set(n, Complex(w * re, w * im));
  }
  return v;
}

/// Exact solution of the full equation from a₁cos x + a₂cos 2x: the only
/// interaction feeds mode 1 from mode 2, giving a₂' = -8a₂ and
/// a₁' = -a₁ + a₁a₂.
struct TwoMode {
  double a1, a2;
  double mode1(double t) const { return a1 * std::exp(-t + a2 * (1.0 - std::exp(-8.0 * t)) / 8.0); }
  double mode2(double t) const { return a2 * std::exp(-8.0 * t); }
};

}  // namespace oracle
