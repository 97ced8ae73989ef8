#pragma once

#include "capspec/spectral_field.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace capspec {

/// Spectral envelope of a random trigonometric polynomial.
///   flat: unit complex Gaussians on [lo, hi]
///   decaying: Gaussians weighted by |n|^{-2} on [lo, hi]
///   high_band: unit Gaussians on the upper half of the band, [max(lo, hi/2), hi]
enum class BandProfile { flat, decaying, high_band };

std::string to_string(BandProfile profile);
BandProfile parse_band_profile(const std::string& name);

/// Hermitian complex-Gaussian field with cutoff N supported on modes lo..hi.
SpectralField random_field(std::mt19937_64& rng, int cutoff, BandProfile profile, int lo, int hi);

/// Same with a fresh generator seeded by seed.
SpectralField random_field(std::uint64_t seed, int cutoff, BandProfile profile, int lo, int hi);

}  // namespace capspec
