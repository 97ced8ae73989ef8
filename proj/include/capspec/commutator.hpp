#pragma once

#include "capspec/spectral_field.hpp"

namespace capspec {

/// Smallest transform grid that keeps quadratic products exact on |n| ≤ N.
inline int min_dealias_grid(int cutoff) { return 3 * cutoff + 1; }

/// FFT-friendly grid satisfying the 3/2 rule for cutoff N.
int dealias_grid(int cutoff);

// The commutator [H, φ]Λ^σψ = H(φ Λ^σψ) - φ H(Λ^σψ) has Fourier coefficients
//
//   i Σ_k (-sgn(n) + sgn(n-k)) |n-k|^σ φ̂(k) ψ̂(n-k),    sgn(0) = 0.
//
// All routines return the Galerkin projection onto |n| ≤ N with mode 0 set to
// zero; the raw n = 0 value is generally nonzero and is exposed only through
// commutator_direct_mode().

/// Raw double-sum value at a single output mode n (any integer, including 0).
/// Every k in range is visited and multiplied by its sign factor.
Complex commutator_direct_mode(const SpectralField& phi, const SpectralField& psi, double sigma, int n);

/// O(N²) double sum, one output mode at a time. Serial reference.
SpectralField commutator_direct_serial(const SpectralField& phi, const SpectralField& psi, double sigma);

/// Same double sum with output modes distributed over OpenMP threads.
/// Bit-identical to commutator_direct_serial.
SpectralField commutator_direct(const SpectralField& phi, const SpectralField& psi, double sigma);

/// Pseudo-spectral evaluation on a dealiased grid of grid_size points.
/// Throws AliasingError if grid_size < min_dealias_grid(N).
SpectralField commutator_fast(const SpectralField& phi, const SpectralField& psi, double sigma,
                              int grid_size);
SpectralField commutator_fast(const SpectralField& phi, const SpectralField& psi, double sigma);

/// ∂ₓ[H, φ]Λ³ψ, the bilinear forcing of the equation.
SpectralField bilinear_forcing(const SpectralField& phi, const SpectralField& psi);

/// ∂ₓ[H, f]Λ³f.
SpectralField nonlinearity(const SpectralField& f);

/// ∂ₓ[H, f]Λ³f through the direct double sum.
SpectralField nonlinearity_direct(const SpectralField& f);

}  // namespace capspec
