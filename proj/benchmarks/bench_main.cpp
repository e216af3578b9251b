// Microbenchmarks for the hot paths of the measurement pipeline: trace
// synthesis, band filtering / band power, cross-correlation and the
// Kramers-Kronig construction.
#include <benchmark/benchmark.h>

#include <vector>

#include "twinbeam/dispersion.hpp"
#include "twinbeam/dsp.hpp"
#include "twinbeam/trace_sim.hpp"

using namespace tbl;

namespace {

constexpr double kDt = 0.4e-9;

SqueezingSpectrum bench_spectrum() {
  return SqueezingSpectrum{0.34657, 100e3, 2e6, 0.0};
}

void BM_SynthesizeShot(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesize_shot(bench_spectrum(), n, kDt, 1, 0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SynthesizeShot)->Arg(1 << 16)->Arg(1 << 18)->Arg(1 << 20);

void BM_Bandpass(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto shot = synthesize_shot(bench_spectrum(), n, kDt, 2, 0);
  const BandpassSpec filter;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bandpass(shot.probe_x, filter));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Bandpass)->Arg(1 << 16)->Arg(1 << 20);

void BM_BandPower(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto shot = synthesize_shot(bench_spectrum(), n, kDt, 3, 0);
  const auto ref = shot_noise_reference(n, kDt, 4, 0);
  const NoiseBand band{100e3, 2e6};
  for (auto _ : state) {
    benchmark::DoNotOptimize(band_power(shot.probe_x, band, ref));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_BandPower)->Arg(1 << 16)->Arg(1 << 20);

void BM_CrossCorrelation(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto a = shot_noise_reference(n, kDt, 5, 0);
  const auto b = shot_noise_reference(n, kDt, 6, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cross_correlation(a.samples, b.samples));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_CrossCorrelation)->Arg(1 << 14)->Arg(1 << 18);

void BM_KramersKronig(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<double> freq(n), gain(n);
  const double span = 100e6;
  for (std::size_t i = 0; i < n; ++i) {
    freq[i] = -span + 2.0 * span * static_cast<double>(i) /
                          static_cast<double>(n - 1);
    const double g = 1e6;
    gain[i] = 1.0 + 0.2 * g * g / (freq[i] * freq[i] + g * g);
  }
  const GainProfile profile(freq, gain);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kramers_kronig_phase(profile));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_KramersKronig)->Arg(1 << 12)->Arg(1 << 15);

void BM_DelaySweepShot(benchmark::State& state) {
  const std::size_t n = 1 << 17;
  std::vector<ExperimentShot> shots{
      synthesize_shot(bench_spectrum(), n, kDt, 7, 0)};
  const auto ref = shot_noise_reference(n, kDt, 8, 0);
  DelaySweepOptions opt;
  opt.band = NoiseBand{100e3, 2e6};
  opt.delays_s = make_delay_grid(-200e-9, 200e-9, 4e-9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(delay_sweep(shots, ref, opt));
  }
}
BENCHMARK(BM_DelaySweepShot);

}  // namespace

BENCHMARK_MAIN();
