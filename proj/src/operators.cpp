#include "capspec/operators.hpp"

#include <cmath>

namespace capspec {

SpectralField apply_multiplier(const SpectralField& v, const MultiplierSpec& b) {
  SpectralField out(v.cutoff());
  for (int n = 1; n <= v.cutoff(); ++n) {
    const double m = b.symbol(n);
    if (!std::isfinite(m))
      throw FieldError("apply_multiplier: symbol is not finite at |n| = " + std::to_string(n));
    out.set(n, m * v[n]);
  }
  return out;
}

SpectralField hilbert(const SpectralField& v) {
  SpectralField out(v.cutoff());
  // -i sgn(n) on n > 0; the conjugate partner gets +i automatically.
  for (int n = 1; n <= v.cutoff(); ++n) out.set(n, Complex(v[n].imag(), -v[n].real()));
  return out;
}

SpectralField lambda_pow(const SpectralField& v, double s) {
  if (s == 0.0) return v;
  return apply_multiplier(v, {[s](int n) { return std::pow(static_cast<double>(n), s); }});
}

SpectralField dx(const SpectralField& v) {
  SpectralField out(v.cutoff());
  for (int n = 1; n <= v.cutoff(); ++n) out.set(n, Complex(-n * v[n].imag(), n * v[n].real()));
  return out;
}

int highest_active_mode(const SpectralField& v) {
  for (int n = v.cutoff(); n >= 1; --n)
    if (v[n] != Complex{}) return n;
  return 0;
}

SpectralField scale_transform(const SpectralField& v, int lambda, int out_cutoff) {
  if (lambda < 1) throw FieldError("scale_transform: lambda must be a positive integer");
  if (static_cast<long>(lambda) * highest_active_mode(v) > out_cutoff)
    throw FieldError("scale_transform: lambda * N = " +
                     std::to_string(static_cast<long>(lambda) * highest_active_mode(v)) +
                     " overflows cutoff " + std::to_string(out_cutoff));
  SpectralField out(out_cutoff);
  const double inv = 1.0 / lambda;
  for (int n = 1; n <= v.cutoff() && lambda * n <= out_cutoff; ++n) out.set(lambda * n, v[n] * inv);
  return out;
}

SpectralField high_pass(const SpectralField& v, double rho) {
  SpectralField out(v.cutoff());
  for (int n = 1; n <= v.cutoff(); ++n)
    if (n > rho) out.set(n, v[n]);
  return out;
}

SpectralField low_pass(const SpectralField& v, double rho) {
  SpectralField out(v.cutoff());
  for (int n = 1; n <= v.cutoff(); ++n)
    if (n <= rho) out.set(n, v[n]);
  return out;
}

}  // namespace capspec
