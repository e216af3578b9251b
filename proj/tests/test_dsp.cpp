#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "twinbeam/dsp.hpp"
#include "twinbeam/gaussian.hpp"
#include "twinbeam/trace_sim.hpp"

using namespace tbl;

namespace {

constexpr double kDt = 0.4e-9;
constexpr double kR3dB = 0.34657;

std::vector<double> direct_cross_correlation(const std::vector<double>& f,
                                             const std::vector<double>& g) {
  const long n = static_cast<long>(f.size());
  std::vector<double> out(2 * n - 1, 0.0);
  for (long lag = -(n - 1); lag <= n - 1; ++lag) {
    double s = 0.0;
    for (long m = 0; m < n; ++m) {
      const long j = m + lag;
      if (j >= 0 && j < n) s += f[m] * g[j];
    }
    out[lag + n - 1] = s;
  }
  return out;
}

QuadratureTrace tone(double freq_hz, std::size_t n) {
  QuadratureTrace t;
  t.sample_period_s = kDt;
  t.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.samples[i] = std::cos(2.0 * std::numbers::pi * freq_hz *
                            static_cast<double>(i) * kDt);
  }
  return t;
}

double rms(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

TEST_CASE("bandpass frequency response") {
  const std::size_t n = 1 << 16;
  const BandpassSpec spec;

  // Bin-aligned tones: k * df with df = 1/(n dt).
  const double df = 1.0 / (static_cast<double>(n) * kDt);
  auto aligned = [&](double f) { return std::round(f / df) * df; };

  const auto t750 = tone(aligned(750e3), n);
  CHECK(rms(bandpass(t750, spec).samples) ==
        doctest::Approx(rms(t750.samples)).epsilon(0.01));

  const auto t3db = tone(aligned(1.75e6), n);
  CHECK(rms(bandpass(t3db, spec).samples) ==
        doctest::Approx(rms(t3db.samples) / std::sqrt(2.0)).epsilon(0.01));

  QuadratureTrace dc;
  dc.sample_period_s = kDt;
  dc.samples.assign(n, 1.0);
  const auto dc_out = bandpass(dc, spec);
  CHECK(rms(dc_out.samples) < 1e-3);

  BandpassSpec bad;
  bad.lowpass_3db_hz = 2e9;
  CHECK_THROWS_AS(bandpass(dc, bad), std::invalid_argument);
}

TEST_CASE("cross-correlation semantics and FFT-vs-direct equality") {
  // Unit impulse against itself.
  std::vector<double> imp(64, 0.0);
  imp[20] = 1.0;
  const auto self = normalized_cross_correlation(imp, imp);
  CHECK(self[63] == doctest::Approx(1.0));  // lag 0 at index n-1
  for (std::size_t i = 0; i < self.size(); ++i) {
    if (i != 63) CHECK(std::abs(self[i]) < 1e-12);
  }

  // Shift theorem under the (f*g)[n] = sum f[m] g[n+m] convention:
  // g[m] = f[m-k] peaks at lag n = k.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  const std::size_t n = 512;
  const long k = 37;
  std::vector<double> f(n), g(n, 0.0);
  for (auto& x : f) x = normal(rng);
  for (std::size_t m = k; m < n; ++m) g[m] = f[m - k];
  const auto corr = normalized_cross_correlation(f, g);
  std::size_t best = 0;
  for (std::size_t i = 1; i < corr.size(); ++i) {
    if (corr[i] > corr[best]) best = i;
  }
  CHECK(static_cast<long>(best) - static_cast<long>(n - 1) == k);

  // FFT equals the direct O(N^2) sum.
  for (std::size_t len : {64u, 1000u, 4096u}) {
    std::vector<double> a(len), b(len);
    for (auto& x : a) x = normal(rng);
    for (auto& x : b) x = normal(rng);
    const auto fast = cross_correlation(a, b);
    const auto slow = direct_cross_correlation(a, b);
    REQUIRE(fast.size() == slow.size());
    double scale = 0.0;
    for (double v : slow) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < fast.size(); ++i) {
      CHECK(std::abs(fast[i] - slow[i]) <= 1e-10 * scale);
    }
  }

  CHECK_THROWS_AS(cross_correlation({1.0, 2.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("band_power basics") {
  const std::size_t n = 1 << 16;
  const auto ref = shot_noise_reference(n, kDt, 3, 0);
  CHECK(band_power(ref, NoiseBand{100e3, 2e6}, ref) == doctest::Approx(1.0));

  // Independent unit traces: joint difference stays at shot noise.
  const auto a = shot_noise_reference(n, kDt, 4, 0);
  const auto b = shot_noise_reference(n, kDt, 4, 1);
  QuadratureTrace diff;
  diff.sample_period_s = kDt;
  diff.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    diff.samples[i] = (a.samples[i] - b.samples[i]) / std::sqrt(2.0);
  }
  CHECK(band_power(diff, NoiseBand{100e3, 2e6}, ref) ==
        doctest::Approx(1.0).epsilon(0.2));

  CHECK_THROWS_AS(band_power(ref, NoiseBand{2e6, 1e6}, ref),
                  std::invalid_argument);
  CHECK_THROWS_AS(band_power(ref, NoiseBand{1e6, 3e9}, ref),
                  std::invalid_argument);
}

TEST_CASE("parabolic peak interpolation") {
  std::vector<double> axis{-2.0, -1.0, 0.0, 1.0, 2.0};
  // Exact parabola with vertex at 0.3.
  std::vector<double> curve;
  for (double x : axis) curve.push_back(5.0 - (x - 0.3) * (x - 0.3));
  const auto peak = interpolate_peak(axis, curve, true);
  REQUIRE(peak.has_value());
  CHECK(*peak == doctest::Approx(0.3).epsilon(1e-12));

  std::vector<double> valley;
  for (double x : axis) valley.push_back((x + 0.4) * (x + 0.4));
  const auto vmin = interpolate_peak(axis, valley, false);
  REQUIRE(vmin.has_value());
  CHECK(*vmin == doctest::Approx(-0.4).epsilon(1e-12));

  // Monotone curve: extremum at the edge, no interior peak.
  std::vector<double> ramp{0.0, 1.0, 2.0, 3.0, 4.0};
  CHECK_FALSE(interpolate_peak(axis, ramp, true).has_value());
}

TEST_CASE("peak advance: identical sets and synthetic shifts") {
  std::vector<double> delays;
  for (int i = -100; i <= 100; ++i) delays.push_back(i * kDt);

  auto curve_at = [&](double center_s, double noise_seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(noise_seed));
    std::normal_distribution<double> normal(0.0, 0.01);
    std::vector<double> c;
    for (double d : delays) {
      const double u = (d - center_s) / 30e-9;
      c.push_back(std::exp(-u * u) + normal(rng));
    }
    return c;
  };

  std::vector<std::vector<double>> ref, same, shifted;
  for (int i = 0; i < 20; ++i) {
    ref.push_back(curve_at(0.0, 100 + i));
    same.push_back(curve_at(0.0, 200 + i));
    shifted.push_back(curve_at(-3.7e-9, 300 + i));
  }
  const auto zero = peak_advance(ref, same, delays);
  CHECK(std::abs(zero.advance_s) <= 3.0 * zero.sem_s + 0.4e-9);
  const auto adv = peak_advance(ref, shifted, delays);
  CHECK(adv.advance_s == doctest::Approx(-3.7e-9).epsilon(0.15));
  CHECK(adv.sem_s > 0.0);
  CHECK(adv.excluded == 0);

  CHECK_THROWS_AS(peak_advance({ref[0]}, ref, delays), std::invalid_argument);

  // Paired trials: shifting each reference curve by whole samples makes every
  // per-trial advancement identical, so the paired sem collapses to zero while
  // the advance is exact.
  std::vector<std::vector<double>> rotated;
  for (const auto& c : ref) {
    std::vector<double> r(c.size());
    for (std::size_t j = 0; j + 5 < c.size(); ++j) r[j] = c[j + 5];
    for (std::size_t j = c.size() - 5; j < c.size(); ++j) r[j] = c.back();
    rotated.push_back(r);
  }
  const auto paired = peak_advance(ref, rotated, delays);
  CHECK(paired.advance_s == doctest::Approx(-5.0 * kDt).epsilon(1e-6));
  CHECK(paired.sem_s <= 1e-15);
}

TEST_CASE("edge timing on a triangle") {
  std::vector<double> t, curve, sems;
  for (int i = -100; i <= 100; ++i) {
    t.push_back(i * 1e-9);
    curve.push_back(std::max(0.0, 1.0 - std::abs(i) / 50.0));
    sems.push_back(0.02);
  }
  const auto lead = leading_edge(t, curve, sems);
  const auto trail = trailing_edge(t, curve, sems);
  CHECK(lead.time_s == doctest::Approx(-25e-9).epsilon(1e-9));
  CHECK(trail.time_s == doctest::Approx(25e-9).epsilon(1e-9));
  // slope = 1/50ns; uncertainty = 0.02 / slope = 1 ns
  CHECK(lead.uncertainty_s == doctest::Approx(1e-9).epsilon(1e-6));

  std::vector<double> flat(t.size(), 1.0);
  CHECK_THROWS_AS(leading_edge(t, flat, sems), std::invalid_argument);
}

TEST_CASE("delay sweep on reference shots") {
  const std::size_t n = 1 << 17;
  const SqueezingSpectrum spec{kR3dB, 100e3, 2e6, 0.0};
  std::vector<ExperimentShot> shots;
  for (std::size_t i = 0; i < 8; ++i) {
    shots.push_back(synthesize_shot(spec, n, kDt, 77, i));
  }
  const auto ref = shot_noise_reference(n, kDt, 800, 0);

  DelaySweepOptions opt;
  opt.band = NoiseBand{100e3, 2e6};
  opt.delays_s = make_delay_grid(-200e-9, 200e-9, 10 * kDt);
  opt.jobs = 1;
  const auto res = delay_sweep(shots, ref, opt);

  // Minimum of the mean inseparability at delay 0 (grid is 4 ns here).
  std::size_t best = 0;
  for (std::size_t j = 1; j < res.insep_mean.size(); ++j) {
    if (res.insep_mean[j] < res.insep_mean[best]) best = j;
  }
  CHECK(std::abs(res.delays_s[best]) <= 10 * kDt);
  CHECK(res.insep_mean[best] < 1.3);
  CHECK(res.insep_mean[best] > 0.8);

  // Uncorrelated at large delay: 2 cosh 2r in total.
  CHECK(res.insep_mean.front() ==
        doctest::Approx(2.0 * std::cosh(2.0 * kR3dB)).epsilon(0.1));
  CHECK(res.insep_mean.front() > 2.0);

  // MI peaks near zero delay and falls off.
  std::size_t mi_best = 0;
  for (std::size_t j = 1; j < res.mi_mean.size(); ++j) {
    if (res.mi_mean[j] > res.mi_mean[mi_best]) mi_best = j;
  }
  // The MI curve is ~300 ns wide, so with only 8 shots the discrete peak
  // can wander a few grid steps around zero.
  CHECK(std::abs(res.delays_s[mi_best]) <= 30e-9);
  CHECK(res.mi_mean.front() < 0.2);
  for (double m : res.mi_mean) CHECK(m >= -3.0 * 0.05);

  // Squeezing in dB is 10 log10(I/2).
  for (std::size_t j = 0; j < res.delays_s.size(); ++j) {
    CHECK(res.sqz_db_mean[j] ==
          doctest::Approx(10.0 * std::log10(0.5 * res.insep_mean[j]))
              .epsilon(0.05));
  }

  // Streaming variant reproduces the in-memory sweep.
  const auto streamed = delay_sweep_stream(
      [&](std::size_t i) { return synthesize_shot(spec, n, kDt, 77, i); },
      shots.size(), ref, opt);
  for (std::size_t j = 0; j < res.insep_mean.size(); ++j) {
    CHECK(streamed.insep_mean[j] == doctest::Approx(res.insep_mean[j]));
    CHECK(streamed.mi_mean[j] == doctest::Approx(res.mi_mean[j]));
  }
}

TEST_CASE("delay grid and validation") {
  const auto grid = make_delay_grid(-2e-9, 2e-9, 0.4e-9);
  REQUIRE(grid.size() == 11);
  CHECK(grid.front() == doctest::Approx(-2e-9));
  CHECK(grid.back() == doctest::Approx(2e-9));
  CHECK(grid[5] == doctest::Approx(0.0));
  CHECK_THROWS_AS(make_delay_grid(1e-9, -1e-9, 0.4e-9), std::invalid_argument);

  const std::size_t n = 4096;
  const SqueezingSpectrum spec{kR3dB, 100e3, 2e6, 0.0};
  std::vector<ExperimentShot> shots{synthesize_shot(spec, n, kDt, 1, 0),
                                    synthesize_shot(spec, n, kDt, 1, 1)};
  const auto ref = shot_noise_reference(n, kDt, 2, 0);
  DelaySweepOptions opt;
  opt.band = NoiseBand{100e3, 2e6};
  opt.delays_s = {0.3 * kDt};  // not an integer multiple
  CHECK_THROWS_AS(delay_sweep(shots, ref, opt), std::invalid_argument);
  opt.delays_s = {static_cast<double>(n + 5) * kDt};  // beyond trace
  CHECK_THROWS_AS(delay_sweep(shots, ref, opt), std::invalid_argument);
}

TEST_CASE("estimate_covariance flags and vacuum identity") {
  const std::size_t n = 1 << 16;
  SqueezingSpectrum vac{0.0, 100e3, 2e6, 0.0};
  std::vector<ExperimentShot> shots;
  for (std::size_t i = 0; i < 30; ++i) {
    shots.push_back(synthesize_shot(vac, n, kDt, 88, i));
  }
  // The reference trace normalizes every entry coherently (~1/sqrt(bins)
  // relative), so average estimates over several independent references.
  Eigen::Matrix4d mean = Eigen::Matrix4d::Zero();
  const std::size_t n_refs = 6;
  for (std::size_t k = 0; k < n_refs; ++k) {
    const auto ref = shot_noise_reference(n, kDt, 900, k);
    mean += estimate_covariance(shots, 0.0, NoiseBand{100e3, 2e6},
                                BandpassSpec{}, ref)
                .cov.matrix();
  }
  mean /= static_cast<double>(n_refs);
  CHECK((mean - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 0.12);
  CHECK_THROWS_AS(estimate_covariance({}, 0.0, NoiseBand{100e3, 2e6},
                                      BandpassSpec{},
                                      shot_noise_reference(n, kDt, 900, 0)),
                  std::invalid_argument);
}
