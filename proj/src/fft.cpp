#include "capspec/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace capspec::fft {
namespace {

// FFTW planning is not thread-safe, execution with new-array calls is. Plans
// are created once per size under a lock and reused from any thread.
struct PlanPair {
  fftw_plan forward = nullptr;   // r2c
  fftw_plan backward = nullptr;  // c2r
};

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair real(int m) {
    std::lock_guard lock(mutex_);
    auto it = real_.find(m);
    if (it != real_.end()) return it->second;

    std::vector<double> x(static_cast<std::size_t>(m));
    std::vector<fftw_complex> spec(static_cast<std::size_t>(m / 2 + 1));
    PlanPair p;
    p.forward = fftw_plan_dft_r2c_1d(m, x.data(), spec.data(), kFlags);
    p.backward = fftw_plan_dft_c2r_1d(m, spec.data(), x.data(), kFlags);
    if (!p.forward || !p.backward) throw std::runtime_error("fftw planning failed");
    real_.emplace(m, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [m, p] : real_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

 private:
  static constexpr unsigned kFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::mutex mutex_;
  std::map<int, PlanPair> real_;
};

bool smooth_235(int n) {
  for (int p : {2, 3, 5})
    while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

int good_size(int n) {
  int m = std::max(2, n + (n % 2));
  while (!smooth_235(m)) m += 2;
  return m;
}

void to_physical(std::span<const std::complex<double>> half, std::span<double> out) {
  const int m = static_cast<int>(out.size());
  const auto bins = static_cast<std::size_t>(m / 2 + 1);
  if (half.size() > bins || 2 * (half.size() - 1) >= out.size())
    throw std::invalid_argument("fft::to_physical: grid too small for spectrum");

  std::vector<std::complex<double>> spec(bins);
  std::copy(half.begin(), half.end(), spec.begin());
  const auto plan = PlanCache::instance().real(m);
  fftw_execute_dft_c2r(plan.backward, reinterpret_cast<fftw_complex*>(spec.data()), out.data());
}

void to_spectral(std::span<const double> samples, std::span<std::complex<double>> out) {
  const int m = static_cast<int>(samples.size());
  const auto bins = static_cast<std::size_t>(m / 2 + 1);
  if (out.size() > bins) throw std::invalid_argument("fft::to_spectral: too many modes requested");

  std::vector<double> in(samples.begin(), samples.end());
  std::vector<std::complex<double>> spec(bins);
  const auto plan = PlanCache::instance().real(m);
  fftw_execute_dft_r2c(plan.forward, in.data(), reinterpret_cast<fftw_complex*>(spec.data()));
  const double scale = 1.0 / m;
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = spec[n] * scale;
}

}  // namespace capspec::fft
