#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace capspec {

using Complex = std::complex<double>;

/// Raised when an input violates a SpectralField invariant (mode range,
/// Hermitian pairing, zero mean).
class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a transform grid is too small for the requested product or
/// sampling.
class AliasingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A real, zero-mean 2π-periodic function held as its Fourier coefficients
///   v(x) = Σ_{|n| ≤ N} v̂(n) e^{inx},  v̂(n) = (1/2π) ∫ v(x) e^{-inx} dx.
///
/// Storage covers the full signed range -N..N. Every mutation goes through
/// set(), which writes the conjugate partner as well, so Hermitian symmetry
/// and v̂(0) = 0 hold bit-exactly at all times.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(int cutoff);

  /// Builds a field from (mode, amplitude) pairs, supplying the conjugate
  /// partner of any mode given on one side only.
  static SpectralField from_modes(std::span<const std::pair<int, Complex>> pairs, int cutoff);
  static SpectralField from_modes(std::initializer_list<std::pair<int, Complex>> pairs, int cutoff);

  /// Field Σ a_n cos(nx) from (n, a_n) pairs with n ≥ 1.
  static SpectralField cosines(std::span<const std::pair<int, double>> terms, int cutoff);
  static SpectralField cosines(std::initializer_list<std::pair<int, double>> terms, int cutoff);

  /// Takes coefficients for modes 1..N; negative modes follow by conjugation.
  static SpectralField from_positive(std::span<const Complex> positive);

  int cutoff() const { return cutoff_; }
  bool empty() const { return cutoff_ == 0; }

  /// Coefficient at mode n; zero for |n| > N.
  Complex operator[](int n) const {
    if (n < -cutoff_ || n > cutoff_) return {};
    return coeffs_[static_cast<std::size_t>(n + cutoff_)];
  }

  /// Sets v̂(n) and v̂(-n) = conj(v̂(n)). Mode 0 only accepts zero.
  void set(int n, Complex value);

  /// Full coefficient array, index n + N.
  std::span<const Complex> coefficients() const { return coeffs_; }

  /// Copy with cutoff M: modes above min(N, M) are dropped, new modes are zero.
  SpectralField resized(int cutoff) const;

  double max_abs_coefficient() const;
  bool all_finite() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double a);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double a, SpectralField v) { return v *= a; }
  friend SpectralField operator*(SpectralField v, double a) { return v *= a; }
  friend bool operator==(const SpectralField&, const SpectralField&) = default;

 private:
  int cutoff_ = 0;
  std::vector<Complex> coeffs_;
};

/// Max |v̂(n) - ŵ(n)| over the union of both mode ranges.
double max_coefficient_difference(const SpectralField& a, const SpectralField& b);

/// Largest Hermitian defect max_n |v̂(-n) - conj v̂(n)| plus |v̂(0)| of a raw
/// coefficient array indexed n + N.
double hermitian_defect(std::span<const Complex> full);

/// Samples Σ v̂(n) e^{inx_j} at x_j = 2πj/M. Requires M ≥ 2N+2.
std::vector<double> evaluate_physical(const SpectralField& field, int grid_size);

/// Inverse of evaluate_physical for band-limited samples: returns the modes
/// |n| ≤ cutoff of the trigonometric interpolant, with the mean removed.
SpectralField from_physical(std::span<const double> samples, int cutoff);

}  // namespace capspec
