#include "capspec/spectral_field.hpp"

#include "capspec/fft.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace capspec {

SpectralField::SpectralField(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 0) throw FieldError("SpectralField: negative cutoff");
  coeffs_.assign(static_cast<std::size_t>(2 * cutoff + 1), Complex{});
}

void SpectralField::set(int n, Complex value) {
  if (n < -cutoff_ || n > cutoff_)
    throw FieldError("SpectralField::set: mode " + std::to_string(n) + " outside cutoff " +
                     std::to_string(cutoff_));
  if (n == 0) {
    if (value != Complex{}) throw FieldError("SpectralField::set: mode 0 must be zero");
    return;
  }
  coeffs_[static_cast<std::size_t>(n + cutoff_)] = value;
  coeffs_[static_cast<std::size_t>(-n + cutoff_)] = std::conj(value);
}

SpectralField SpectralField::from_modes(std::span<const std::pair<int, Complex>> pairs, int cutoff) {
  std::map<int, Complex> given;
  for (const auto& [n, c] : pairs) {
    if (n < -cutoff || n > cutoff)
      throw FieldError("from_modes: |mode| " + std::to_string(n) + " exceeds cutoff " +
                       std::to_string(cutoff));
    if (n == 0) {
      if (c != Complex{}) throw FieldError("from_modes: mode 0 carries nonzero amplitude");
      continue;
    }
    auto [it, inserted] = given.emplace(n, c);
    if (!inserted && it->second != c)
      throw FieldError("from_modes: mode " + std::to_string(n) + " listed twice with different values");
  }

  SpectralField v(cutoff);
  for (const auto& [n, c] : given) {
    if (auto partner = given.find(-n); partner != given.end() && partner->second != std::conj(c))
      throw FieldError("from_modes: modes " + std::to_string(n) + " and " + std::to_string(-n) +
                       " are not complex conjugates");
    v.set(n, c);
  }
  return v;
}

SpectralField SpectralField::from_modes(std::initializer_list<std::pair<int, Complex>> pairs,
                                        int cutoff) {
  return from_modes(std::span<const std::pair<int, Complex>>(pairs.begin(), pairs.size()), cutoff);
}

SpectralField SpectralField::cosines(std::initializer_list<std::pair<int, double>> terms, int cutoff) {
  return cosines(std::span<const std::pair<int, double>>(terms.begin(), terms.size()), cutoff);
}

SpectralField SpectralField::cosines(std::span<const std::pair<int, double>> terms, int cutoff) {
  SpectralField v(cutoff);
  for (const auto& [n, a] : terms) {
    if (n < 1) throw FieldError("cosines: modes must be positive");
    v.set(n, v[n] + Complex(a / 2.0, 0.0));
  }
  return v;
}

SpectralField SpectralField::from_positive(std::span<const Complex> positive) {
  SpectralField v(static_cast<int>(positive.size()));
  for (std::size_t i = 0; i < positive.size(); ++i) v.set(static_cast<int>(i) + 1, positive[i]);
  return v;
}

SpectralField SpectralField::resized(int cutoff) const {
  SpectralField v(cutoff);
  const int keep = std::min(cutoff, cutoff_);
  for (int n = 1; n <= keep; ++n) v.set(n, (*this)[n]);
  return v;
}

double SpectralField::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

bool SpectralField::all_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (other.cutoff_ > cutoff_) *this = resized(other.cutoff_);
  for (int n = 1; n <= other.cutoff_; ++n) set(n, (*this)[n] + other[n]);
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (other.cutoff_ > cutoff_) *this = resized(other.cutoff_);
  for (int n = 1; n <= other.cutoff_; ++n) set(n, (*this)[n] - other[n]);
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (auto& c : coeffs_) c *= a;
  return *this;
}

double max_coefficient_difference(const SpectralField& a, const SpectralField& b) {
  const int top = std::max(a.cutoff(), b.cutoff());
  double m = 0.0;
  for (int n = -top; n <= top; ++n) m = std::max(m, std::abs(a[n] - b[n]));
  return m;
}

double hermitian_defect(std::span<const Complex> full) {
  const int cutoff = static_cast<int>(full.size() / 2);
  auto at = [&](int n) { return full[static_cast<std::size_t>(n + cutoff)]; };
  double d = std::abs(at(0));
  for (int n = 1; n <= cutoff; ++n) d = std::max(d, std::abs(at(-n) - std::conj(at(n))));
  return d;
}

std::vector<double> evaluate_physical(const SpectralField& field, int grid_size) {
  const int cutoff = field.cutoff();
  if (grid_size < 2 * cutoff + 2)
    throw AliasingError("evaluate_physical: grid of " + std::to_string(grid_size) +
                        " points cannot resolve cutoff " + std::to_string(cutoff));
  // Hermitian symmetry is structural, but a defect here would mean a non-real
  // function; refuse rather than silently dropping the imaginary part.
  const double scale = std::max(1.0, field.max_abs_coefficient());
  if (hermitian_defect(field.coefficients()) > 1e-12 * scale)
    throw FieldError("evaluate_physical: coefficients are not Hermitian");

  std::vector<Complex> half(static_cast<std::size_t>(cutoff + 1));
  for (int n = 1; n <= cutoff; ++n) half[static_cast<std::size_t>(n)] = field[n];
  std::vector<double> out(static_cast<std::size_t>(grid_size));
  fft::to_physical(half, out);
  return out;
}

SpectralField from_physical(std::span<const double> samples, int cutoff) {
  if (static_cast<int>(samples.size()) < 2 * cutoff + 2)
    throw AliasingError("from_physical: too few samples for cutoff " + std::to_string(cutoff));
  std::vector<Complex> half(static_cast<std::size_t>(cutoff + 1));
  fft::to_spectral(samples, half);
  return SpectralField::from_positive(std::span<const Complex>(half).subspan(1));
}

}  // namespace capspec
