#include "twinbeam/trace_sim.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "twinbeam/fft.hpp"
#include "twinbeam/rng.hpp"

namespace tbl {

namespace {

// RNG role codes keep the per-shot streams independent of each other.
constexpr std::uint64_t kRoleSynthesis = 1;
constexpr std::uint64_t kRolePropagation = 2;
constexpr std::uint64_t kRoleShotNoise = 3;

}  // namespace

double SqueezingSpectrum::r_at(double f_hz) const {
  if (f_hz < f_lo_hz || f_hz > f_hi_hz) return 0.0;
  const double width = f_hi_hz - f_lo_hz;
  const double edge = rolloff_frac * width;
  if (edge <= 0.0) return r;
  const double from_lo = f_hz - f_lo_hz;
  const double from_hi = f_hi_hz - f_hz;
  double w = 1.0;
  if (from_lo < edge) {
    w = 0.5 * (1.0 - std::cos(std::numbers::pi * from_lo / edge));
  } else if (from_hi < edge) {
    w = 0.5 * (1.0 - std::cos(std::numbers::pi * from_hi / edge));
  }
  return r * w;
}

ExperimentShot synthesize_shot(const SqueezingSpectrum& spec,
                               std::size_t length, double sample_period_s,
                               std::uint64_t seed, std::uint64_t shot_index) {
  if (length < 16) throw std::invalid_argument("synthesize_shot: trace too short");
  if (!(sample_period_s > 0.0)) {
    throw std::invalid_argument("synthesize_shot: bad sample period");
  }
  const double nyquist = 0.5 / sample_period_s;
  if (spec.f_hi_hz > nyquist) {
    throw std::invalid_argument(
        "synthesize_shot: squeezing band exceeds the Nyquist frequency");
  }
  if (spec.r < 0.0) throw std::invalid_argument("synthesize_shot: r < 0");

  const std::size_t n = length;
  const std::size_t nb = n / 2 + 1;
  const double df = 1.0 / (sample_period_s * static_cast<double>(n));
  auto rng = make_stream(seed, shot_index, kRoleSynthesis);
  std::normal_distribution<double> normal(0.0, 1.0);

  // Joint-quadrature spectra: X-, X+, Y+, Y-.
  std::vector<std::complex<double>> xm(nb), xp(nb), yp(nb), ym(nb);
  const double nscale = static_cast<double>(n);
  for (std::size_t k = 0; k < nb; ++k) {
    const double f = df * static_cast<double>(k);
    const double r = spec.r_at(f);
    const double sq = std::exp(-2.0 * r);   // squeezed joint variance
    const double asq = std::exp(2.0 * r);   // antisqueezed joint variance
    const bool real_bin = (k == 0) || (2 * k == n);
    if (real_bin) {
      xm[k] = std::sqrt(nscale * sq) * normal(rng);
      xp[k] = std::sqrt(nscale * asq) * normal(rng);
      yp[k] = std::sqrt(nscale * sq) * normal(rng);
      ym[k] = std::sqrt(nscale * asq) * normal(rng);
    } else {
      const double ssq = std::sqrt(0.5 * nscale * sq);
      const double sas = std::sqrt(0.5 * nscale * asq);
      xm[k] = {ssq * normal(rng), ssq * normal(rng)};
      xp[k] = {sas * normal(rng), sas * normal(rng)};
      yp[k] = {ssq * normal(rng), ssq * normal(rng)};
      ym[k] = {sas * normal(rng), sas * normal(rng)};
    }
  }

  // Beam spectra from the joint quadratures.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<std::complex<double>> spx(nb), scx(nb), spy(nb), scy(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    spx[k] = inv_sqrt2 * (xp[k] + xm[k]);
    scx[k] = inv_sqrt2 * (xp[k] - xm[k]);
    spy[k] = inv_sqrt2 * (yp[k] + ym[k]);
    scy[k] = inv_sqrt2 * (yp[k] - ym[k]);
  }

  ExperimentShot shot;
  const std::uint64_t tag = stream_seed(seed, shot_index, kRoleSynthesis);
  auto fill = [&](QuadratureTrace& tr, std::vector<std::complex<double>>& s,
                  TraceMode mode, Quadrature quad) {
    tr.samples = fft::real_inverse(s, n);
    tr.sample_period_s = sample_period_s;
    tr.mode = mode;
    tr.quadrature = quad;
    tr.seed_tag = tag;
  };
  fill(shot.probe_x, spx, TraceMode::Probe, Quadrature::X);
  fill(shot.probe_y, spy, TraceMode::Probe, Quadrature::Y);
  fill(shot.conj_x, scx, TraceMode::Conjugate, Quadrature::X);
  fill(shot.conj_y, scy, TraceMode::Conjugate, Quadrature::Y);
  return shot;
}

ExperimentShot propagate_through_medium(const ExperimentShot& shot,
                                        const MediumResponse& resp,
                                        TraceMode mode,
                                        double detuning_offset_hz,
                                        std::uint64_t seed,
                                        std::uint64_t shot_index) {
  if (mode == TraceMode::ShotNoise) {
    throw std::invalid_argument("propagate_through_medium: pick probe or conjugate");
  }
  if (shot.size() == 0) {
    throw std::invalid_argument("propagate_through_medium: empty shot");
  }
  // Gain-free medium: identity path, bit-for-bit.
  bool trivial = true;
  for (std::size_t i = 0; i < resp.amplitude.size() && trivial; ++i) {
    trivial = resp.amplitude[i] == 1.0 && resp.phase_rad[i] == 0.0 &&
              resp.noise_coupling[i] == 0.0;
  }
  if (trivial) return shot;

  const QuadratureTrace& in_x = (mode == TraceMode::Probe) ? shot.probe_x : shot.conj_x;
  const QuadratureTrace& in_y = (mode == TraceMode::Probe) ? shot.probe_y : shot.conj_y;

  const std::size_t n = in_x.size();
  const double df = 1.0 / (in_x.sample_period_s * static_cast<double>(n));
  auto sx = fft::real_forward(in_x.samples);
  auto sy = fft::real_forward(in_y.samples);

  auto rng = make_stream(seed, shot_index, kRolePropagation);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double nscale = static_cast<double>(n);

  for (std::size_t k = 0; k < sx.size(); ++k) {
    const double f = df * static_cast<double>(k);
    const TransferPoint tp = transfer_or_identity(resp, f + detuning_offset_hz);
    // Enforce |t|^2 - |nu|^2 = 1 per bin so the channel is exactly the
    // phase-insensitive amplifier with G = |t|^2.
    const double coupling = std::max(std::norm(tp.amplitude) - 1.0, 0.0);
    const double w = std::sqrt(coupling);
    const bool real_bin = (k == 0) || (2 * k == n);
    if (real_bin) {
      const double amp = std::abs(tp.amplitude);
      sx[k] = amp * sx[k].real() + w * std::sqrt(nscale) * normal(rng);
      sy[k] = amp * sy[k].real() - w * std::sqrt(nscale) * normal(rng);
    } else {
      const double s = std::sqrt(0.5 * nscale);
      const std::complex<double> vx{s * normal(rng), s * normal(rng)};
      const std::complex<double> vy{s * normal(rng), s * normal(rng)};
      sx[k] = tp.amplitude * sx[k] + w * vx;
      sy[k] = tp.amplitude * sy[k] - w * vy;
    }
  }

  ExperimentShot out = shot;
  QuadratureTrace& out_x = (mode == TraceMode::Probe) ? out.probe_x : out.conj_x;
  QuadratureTrace& out_y = (mode == TraceMode::Probe) ? out.probe_y : out.conj_y;
  out_x.samples = fft::real_inverse(sx, n);
  out_y.samples = fft::real_inverse(sy, n);
  return out;
}

QuadratureTrace shot_noise_reference(std::size_t length,
                                     double sample_period_s,
                                     std::uint64_t seed,
                                     std::uint64_t shot_index) {
  auto rng = make_stream(seed, shot_index, kRoleShotNoise);
  std::normal_distribution<double> normal(0.0, 1.0);
  QuadratureTrace tr;
  tr.samples.resize(length);
  for (double& v : tr.samples) v = normal(rng);
  tr.sample_period_s = sample_period_s;
  tr.mode = TraceMode::ShotNoise;
  tr.quadrature = Quadrature::X;
  tr.seed_tag = stream_seed(seed, shot_index, kRoleShotNoise);
  return tr;
}

}  // namespace tbl
