#pragma once

#include <complex>
#include <span>

namespace capspec::fft {

/// Smallest even integer ≥ n whose only prime factors are 2, 3 and 5.
int good_size(int n);

/// Samples Σ_{|n|≤N} c(n) e^{inx_j}, x_j = 2πj/M, of a Hermitian spectrum
/// given by its nonnegative half c(0..N). out.size() is M; requires M > 2N.
void to_physical(std::span<const std::complex<double>> half, std::span<double> out);

/// Discrete Fourier coefficients (1/M) Σ_j v_j e^{-inx_j} for n = 0..out.size()-1.
/// Requires out.size() ≤ M/2 + 1.
void to_spectral(std::span<const double> samples, std::span<std::complex<double>> out);

}  // namespace capspec::fft
