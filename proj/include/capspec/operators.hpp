#pragma once

#include "capspec/spectral_field.hpp"

#include <functional>

namespace capspec {

/// Radial Fourier multiplier b(Λ): v̂(n) ↦ b(|n|) v̂(n). Mode 0 maps to 0.
struct MultiplierSpec {
  std::function<double(int)> symbol;
};

/// Throws FieldError if the symbol is not finite on 1..N.
SpectralField apply_multiplier(const SpectralField& v, const MultiplierSpec& b);

/// Hilbert transform, symbol -i sgn(n).
SpectralField hilbert(const SpectralField& v);

/// Λ^s, symbol |n|^s. Safe for negative s since mode 0 is never populated.
SpectralField lambda_pow(const SpectralField& v, double s);

/// ∂ₓ, symbol i n.
SpectralField dx(const SpectralField& v);

/// x ↦ v(λx)/λ for integer λ ≥ 1. The result has the given cutoff, which must
/// be at least λ·(highest nonzero mode of v).
SpectralField scale_transform(const SpectralField& v, int lambda, int out_cutoff);
inline SpectralField scale_transform(const SpectralField& v, int lambda) {
  return scale_transform(v, lambda, lambda * v.cutoff());
}

/// Modes |n| > rho (high) and |n| ≤ rho (low).
SpectralField high_pass(const SpectralField& v, double rho);
SpectralField low_pass(const SpectralField& v, double rho);

/// Highest mode with a nonzero coefficient, 0 for the zero field.
int highest_active_mode(const SpectralField& v);

}  // namespace capspec
