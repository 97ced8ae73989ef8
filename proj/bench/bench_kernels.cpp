// Serial reference kernels against their OpenMP counterparts and the FFT path.
// Thread count follows OMP_NUM_THREADS.

#include "capspec/commutator.hpp"
#include "capspec/evolution.hpp"
#include "capspec/random_fields.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace capspec;

std::pair<SpectralField, SpectralField> inputs(int cutoff) {
  return {random_field(11, cutoff, BandProfile::flat, 1, cutoff), random_field(12, cutoff, BandProfile::decaying, 1, cutoff)};
}

void BM_commutator_direct_serial(benchmark::State& state) {
  const auto [phi, psi] = inputs(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(commutator_direct_serial(phi, psi, 3.0));
  state.SetComplexityN(state.range(0));
}

void BM_commutator_direct_parallel(benchmark::State& state) {
  const auto [phi, psi] = inputs(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(commutator_direct(phi, psi, 3.0));
  state.SetComplexityN(state.range(0));
}

void BM_commutator_fast(benchmark::State& state) {
  const auto [phi, psi] = inputs(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(commutator_fast(phi, psi, 3.0));
  state.SetComplexityN(state.range(0));
}

std::vector<SpectralField> series(int cutoff, int length) {
  std::vector<SpectralField> out;
  for (int m = 0; m < length; ++m) out.push_back(random_field(100 + m, cutoff, BandProfile::decaying, 1, cutoff));
  return out;
}

void BM_forcing_series_serial(benchmark::State& state) {
  const auto s = series(static_cast<int>(state.range(0)), 256);
  for (auto _ : state) benchmark::DoNotOptimize(forcing_series_serial(s, s));
}

void BM_forcing_series_parallel(benchmark::State& state) {
  const auto s = series(static_cast<int>(state.range(0)), 256);
  for (auto _ : state) benchmark::DoNotOptimize(forcing_series(s, s));
}

}  // namespace

BENCHMARK(BM_commutator_direct_serial)->RangeMultiplier(2)->Range(32, 512)->Complexity();
BENCHMARK(BM_commutator_direct_parallel)->RangeMultiplier(2)->Range(32, 512)->Complexity()->UseRealTime();
BENCHMARK(BM_commutator_fast)->RangeMultiplier(2)->Range(32, 512)->Complexity();
BENCHMARK(BM_forcing_series_serial)->Arg(64)->Arg(256);
BENCHMARK(BM_forcing_series_parallel)->Arg(64)->Arg(256)->UseRealTime();

BENCHMARK_MAIN();
