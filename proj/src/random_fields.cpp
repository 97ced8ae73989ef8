#include "capspec/random_fields.hpp"

#include <algorithm>
#include <stdexcept>

namespace capspec {

std::string to_string(BandProfile profile) {
  switch (profile) {
    case BandProfile::flat: return "flat";
    case BandProfile::decaying: return "decaying";
    case BandProfile::high_band: return "high_band";
  }
  return "unknown";
}

BandProfile parse_band_profile(const std::string& name) {
  if (name == "flat") return BandProfile::flat;
  if (name == "decaying") return BandProfile::decaying;
  if (name == "high_band") return BandProfile::high_band;
  throw std::invalid_argument("profile: expected flat, decaying or high_band, got '" + name + "'");
}

SpectralField random_field(std::mt19937_64& rng, int cutoff, BandProfile profile, int lo, int hi) {
  lo = std::max(lo, 1);
  hi = std::min(hi, cutoff);
  if (lo > hi) throw std::invalid_argument("random_field: empty band");
  if (profile == BandProfile::high_band) lo = std::max(lo, hi / 2);

  std::normal_distribution<double> gauss(0.0, 1.0);
  SpectralField v(cutoff);
  for (int n = lo; n <= hi; ++n) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    const double w = profile == BandProfile::decaying ? 1.0 / (static_cast<double>(n) * n) : 1.0;
    v.set(n, Complex(w * re, w * im));
  }
  return v;
}

SpectralField random_field(std::uint64_t seed, int cutoff, BandProfile profile, int lo, int hi) {
  std::mt19937_64 rng(seed);
  return random_field(rng, cutoff, profile, lo, hi);
}

}  // namespace capspec
