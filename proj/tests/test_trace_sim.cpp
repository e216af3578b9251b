#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "twinbeam/dsp.hpp"
#include "twinbeam/fft.hpp"
#include "twinbeam/gaussian.hpp"
#include "twinbeam/trace_sim.hpp"

using namespace tbl;

namespace {

constexpr double kDt = 0.4e-9;
constexpr double kR3dB = 0.34657;

// Flat -3 dB squeezing exactly covering the measurement band.
SqueezingSpectrum flat_band_spectrum() {
  return SqueezingSpectrum{kR3dB, 100e3, 2e6, 0.0};
}

QuadratureTrace joint_trace(const ExperimentShot& shot, SqueezedJoint joint) {
  QuadratureTrace out;
  out.sample_period_s = shot.sample_period_s();
  out.samples.resize(shot.size());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < shot.size(); ++i) {
    if (joint == SqueezedJoint::XMinus) {
      out.samples[i] =
          inv_sqrt2 * (shot.probe_x.samples[i] - shot.conj_x.samples[i]);
    } else {
      out.samples[i] =
          inv_sqrt2 * (shot.probe_y.samples[i] + shot.conj_y.samples[i]);
    }
  }
  return out;
}

QuadratureTrace antisqueezed_trace(const ExperimentShot& shot, bool x_plus) {
  QuadratureTrace out;
  out.sample_period_s = shot.sample_period_s();
  out.samples.resize(shot.size());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < shot.size(); ++i) {
    out.samples[i] =
        x_plus ? inv_sqrt2 * (shot.probe_x.samples[i] + shot.conj_x.samples[i])
               : inv_sqrt2 * (shot.probe_y.samples[i] - shot.conj_y.samples[i]);
  }
  return out;
}

// Flat-response medium with an optional linear phase (delay tau).
MediumResponse flat_medium(double gain, double tau_s, double span_hz = 5e6,
                           double step_hz = 10e3) {
  MediumResponse resp;
  for (double f = -span_hz; f <= span_hz + 0.5 * step_hz; f += step_hz) {
    resp.freq_hz.push_back(f);
    resp.amplitude.push_back(std::sqrt(gain));
    resp.phase_rad.push_back(-2.0 * std::numbers::pi * f * tau_s);
    resp.group_delay_s.push_back(tau_s);
    resp.noise_coupling.push_back(gain - 1.0);
  }
  return resp;
}

double variance(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("determinism: identical seeds give bit-identical shots") {
  const auto a = synthesize_shot(flat_band_spectrum(), 4096, kDt, 7, 3);
  const auto b = synthesize_shot(flat_band_spectrum(), 4096, kDt, 7, 3);
  CHECK(a.probe_x.samples == b.probe_x.samples);
  CHECK(a.conj_y.samples == b.conj_y.samples);
  const auto c = synthesize_shot(flat_band_spectrum(), 4096, kDt, 7, 4);
  CHECK(a.probe_x.samples != c.probe_x.samples);
}

TEST_CASE("r = 0 gives unit-variance uncorrelated beams") {
  SqueezingSpectrum vac{0.0, 100e3, 2e6, 0.0};
  const std::size_t n = 1 << 18;
  const auto shot = synthesize_shot(vac, n, kDt, 11, 0);
  const double tol = 5.0 * std::sqrt(2.0 / static_cast<double>(n));
  CHECK(variance(shot.probe_x.samples) == doctest::Approx(1.0).epsilon(tol));
  CHECK(variance(shot.conj_x.samples) == doctest::Approx(1.0).epsilon(tol));
  const NoiseBand band{100e3, 2e6};
  const auto ref = shot_noise_reference(n, kDt, 99, 0);
  CHECK(band_power(joint_trace(shot, SqueezedJoint::XMinus), band, ref) ==
        doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("-3 dB source: squeezed 0.5, antisqueezed 2.0 band powers") {
  const std::size_t n = 1 << 18;
  const NoiseBand band{100e3, 2e6};
  const std::size_t shots = 10;
  double xm = 0.0, yp = 0.0, xp = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < shots; ++i) {
    const auto shot = synthesize_shot(flat_band_spectrum(), n, kDt, 21, i);
    const auto ref = shot_noise_reference(n, kDt, 500, i);
    xm += band_power(joint_trace(shot, SqueezedJoint::XMinus), band, ref);
    yp += band_power(joint_trace(shot, SqueezedJoint::YPlus), band, ref);
    xp += band_power(antisqueezed_trace(shot, true), band, ref);
    ym += band_power(antisqueezed_trace(shot, false), band, ref);
  }
  const double ns = static_cast<double>(shots);
  CHECK(xm / ns == doctest::Approx(0.5).epsilon(0.10));
  CHECK(yp / ns == doctest::Approx(0.5).epsilon(0.10));
  CHECK(xp / ns == doctest::Approx(2.0).epsilon(0.10));
  CHECK(ym / ns == doctest::Approx(2.0).epsilon(0.10));
}

TEST_CASE("Parseval: time variance equals integrated periodogram") {
  const std::size_t n = 1 << 16;
  const auto shot = synthesize_shot(flat_band_spectrum(), n, kDt, 31, 0);
  for (const auto* tr : {&shot.probe_x, &shot.probe_y, &shot.conj_x}) {
    const auto s = fft::real_forward(tr->samples);
    double spec = std::norm(s.front()) + std::norm(s.back());
    for (std::size_t k = 1; k + 1 < s.size(); ++k) spec += 2.0 * std::norm(s[k]);
    spec /= static_cast<double>(n) * static_cast<double>(n);
    double time = 0.0;
    for (double x : tr->samples) time += x * x;
    time /= static_cast<double>(n);
    CHECK(std::abs(time - spec) <= 1e-6 * spec);
  }
}

TEST_CASE("shot-noise reference properties") {
  const std::size_t n = 1 << 16;
  const auto ref = shot_noise_reference(n, kDt, 1, 0);
  CHECK(band_power(ref, NoiseBand{100e3, 2e6}, ref) == doctest::Approx(1.0));
  double mean = 0.0;
  for (double x : ref.samples) mean += x;
  mean /= static_cast<double>(n);
  CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));

  const auto other = shot_noise_reference(n, kDt, 2, 0);
  const auto corr =
      normalized_cross_correlation(ref.samples, other.samples);
  double peak = 0.0;
  for (double v : corr) peak = std::max(peak, std::abs(v));
  CHECK(peak < 0.03);  // ~5 sigma of the no-correlation null
}

TEST_CASE("gain-free medium is a bit-for-bit identity") {
  const auto shot = synthesize_shot(flat_band_spectrum(), 4096, kDt, 5, 0);
  const auto resp = flat_medium(1.0, 0.0);
  const auto out =
      propagate_through_medium(shot, resp, TraceMode::Conjugate, 0.0, 5, 0);
  CHECK(out.conj_x.samples == shot.conj_x.samples);
  CHECK(out.conj_y.samples == shot.conj_y.samples);
  CHECK(out.probe_x.samples == shot.probe_x.samples);
}

TEST_CASE("flat gain 1.1: inseparability matches the closed form") {
  const std::size_t n = 1 << 18;
  const NoiseBand band{100e3, 2e6};
  const auto resp = flat_medium(1.1, 0.0);
  const std::size_t shots = 10;
  double insep = 0.0;
  for (std::size_t i = 0; i < shots; ++i) {
    const auto shot = synthesize_shot(flat_band_spectrum(), n, kDt, 41, i);
    const auto out =
        propagate_through_medium(shot, resp, TraceMode::Conjugate, 0.0, 41, i);
    const auto ref = shot_noise_reference(n, kDt, 600, i);
    insep += band_power(joint_trace(out, SqueezedJoint::XMinus), band, ref) +
             band_power(joint_trace(out, SqueezedJoint::YPlus), band, ref);
  }
  insep /= static_cast<double>(shots);
  const double expect = inseparability_closed_form(kR3dB, 1.1);
  CHECK(insep == doctest::Approx(expect).epsilon(0.07));
  CHECK(insep < 2.0);  // entanglement survives the amplifier
}

TEST_CASE("pure linear phase shifts the cross-correlation peak") {
  const std::size_t n = 1 << 18;
  const double tau = -3.7e-9;
  const auto resp = flat_medium(1.0, tau);
  const auto shot = synthesize_shot(flat_band_spectrum(), n, kDt, 51, 0);
  const auto out =
      propagate_through_medium(shot, resp, TraceMode::Conjugate, 0.0, 51, 0);

  // Compare against the same shot without the medium: the shot noise is
  // identical in both curves, so the peak difference isolates the phase
  // shift (a single-shot absolute peak position jitters by a few ns).
  const BandpassSpec filter;
  auto peak_of = [&](const ExperimentShot& s) {
    const auto fp = bandpass(s.probe_x, filter);
    const auto fc = bandpass(s.conj_x, filter);
    const auto corr = normalized_cross_correlation(fp.samples, fc.samples);
    std::vector<double> lags(corr.size());
    const long n1 = static_cast<long>(n) - 1;
    for (std::size_t i = 0; i < corr.size(); ++i) {
      lags[i] = static_cast<double>(static_cast<long>(i) - n1) * kDt;
    }
    const auto peak = interpolate_peak(lags, corr, true);
    REQUIRE(peak.has_value());
    return *peak;
  };
  CHECK(std::abs(peak_of(out) - peak_of(shot) - tau) <= kDt);
}

TEST_CASE("estimated covariance from shots matches the generating state") {
  const std::size_t n = 1 << 16;
  const std::size_t shots_n = 40;
  std::vector<ExperimentShot> shots;
  shots.reserve(shots_n);
  for (std::size_t i = 0; i < shots_n; ++i) {
    shots.push_back(synthesize_shot(flat_band_spectrum(), n, kDt, 61, i));
  }
  const auto ref = shot_noise_reference(n, kDt, 700, 0);
  const auto est = estimate_covariance(shots, 0.0, NoiseBand{100e3, 2e6},
                                       BandpassSpec{}, ref);
  const auto expect = epr_covariance(kR3dB);
  CHECK((est.cov.matrix() - expect.matrix()).cwiseAbs().maxCoeff() < 0.12);
  CHECK(est.min_symplectic > 0.8);
}

TEST_CASE("squeezing spectrum roll-off shape") {
  SqueezingSpectrum spec{kR3dB, 100e3, 1.1e6, 0.1};  // 100 kHz edges
  CHECK(spec.r_at(50e3) == doctest::Approx(0.0));
  CHECK(spec.r_at(600e3) == doctest::Approx(kR3dB));
  CHECK(spec.r_at(150e3) == doctest::Approx(0.5 * kR3dB).epsilon(1e-9));
  CHECK(spec.r_at(1.2e6) == doctest::Approx(0.0));
  CHECK(spec.r_at(100e3) == doctest::Approx(0.0));
}

TEST_CASE("synthesis input validation") {
  CHECK_THROWS_AS(synthesize_shot(flat_band_spectrum(), 8, kDt, 1, 0),
                  std::invalid_argument);
  SqueezingSpectrum beyond{kR3dB, 100e3, 2e9, 0.0};
  CHECK_THROWS_AS(synthesize_shot(beyond, 4096, kDt, 1, 0),
                  std::invalid_argument);
  const auto shot = synthesize_shot(flat_band_spectrum(), 4096, kDt, 1, 0);
  CHECK_THROWS_AS(propagate_through_medium(shot, flat_medium(1.1, 0.0),
                                           TraceMode::ShotNoise, 0.0, 1, 0),
                  std::invalid_argument);
}
