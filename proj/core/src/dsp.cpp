#include "twinbeam/dsp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "twinbeam/fft.hpp"

namespace tbl {

namespace {

constexpr double kPi = std::numbers::pi;

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sem_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) /
                   static_cast<double>(v.size()));
}

std::size_t next_fft_size(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// Mutual information with sub-unity symplectic eigenvalues (statistical
// noise near purity) clamped to 1. Returns MI and the smallest eigenvalue
// seen before clamping.
std::pair<double, double> mi_clamped(const Eigen::Matrix4d& m) {
  const TwoModeCovariance cov(0.5 * (m + m.transpose()), 1e-6);
  const SymplecticSpectrum s = symplectic_eigenvalues(cov);
  double min_nu = std::min(s.nu[0], s.nu[1]);
  const double det_p = std::max(cov.probe_block().determinant(), 0.0);
  const double det_c = std::max(cov.conjugate_block().determinant(), 0.0);
  const double nu_p = std::sqrt(det_p);
  const double nu_c = std::sqrt(det_c);
  min_nu = std::min({min_nu, nu_p, nu_c});
  auto f = [](double nu) {
    return entropy_of_symplectic_eigenvalue(std::max(nu, 1.0));
  };
  const double mi = f(nu_p) + f(nu_c) - f(s.nu[0]) - f(s.nu[1]);
  return {mi, min_nu};
}

}  // namespace

std::pair<double, double> estimated_mutual_information(
    const TwoModeCovariance& cov) {
  return mi_clamped(cov.matrix());
}

double BandpassSpec::amplitude_response(double f_hz) const {
  f_hz = std::abs(f_hz);
  const double x = f_hz / highpass_corner_hz;
  const double hp = x / std::sqrt(1.0 + x * x);
  double lp = 1.0;
  if (f_hz > lowpass_flat_hz) {
    // Hann half-lobe with the -3 dB point pinned at lowpass_3db_hz.
    static const double kFrac =
        (2.0 / kPi) * std::acos(std::pow(2.0, -0.25));
    const double full = lowpass_flat_hz +
                        (lowpass_3db_hz - lowpass_flat_hz) / kFrac;
    if (f_hz >= full) {
      lp = 0.0;
    } else {
      const double c =
          std::cos(0.5 * kPi * (f_hz - lowpass_flat_hz) / (full - lowpass_flat_hz));
      lp = c * c;
    }
  }
  return hp * lp;
}

void BandpassSpec::validate(double nyquist_hz) const {
  if (!(highpass_corner_hz > 0.0) || !(lowpass_flat_hz > highpass_corner_hz) ||
      !(lowpass_3db_hz > lowpass_flat_hz)) {
    throw std::invalid_argument("BandpassSpec: need 0 < hp corner < lp flat < lp -3dB");
  }
  if (lowpass_3db_hz >= nyquist_hz) {
    throw std::invalid_argument("BandpassSpec: -3 dB point above Nyquist");
  }
}

QuadratureTrace bandpass(const QuadratureTrace& trace,
                         const BandpassSpec& spec) {
  spec.validate(trace.nyquist_hz());
  const std::size_t n = trace.size();
  auto s = fft::real_forward(trace.samples);
  const double df = 1.0 / (trace.sample_period_s * static_cast<double>(n));
  for (std::size_t k = 0; k < s.size(); ++k) {
    s[k] *= spec.amplitude_response(df * static_cast<double>(k));
  }
  QuadratureTrace out = trace;
  out.samples = fft::real_inverse(s, n);
  return out;
}

double band_power(const QuadratureTrace& trace, const NoiseBand& band,
                  const QuadratureTrace& shot_ref) {
  if (trace.size() != shot_ref.size() ||
      trace.sample_period_s != shot_ref.sample_period_s) {
    throw std::invalid_argument("band_power: trace and reference must match");
  }
  if (!(band.f_lo_hz < band.f_hi_hz) || band.f_hi_hz > trace.nyquist_hz()) {
    throw std::invalid_argument("band_power: band outside the sampled grid");
  }
  const std::size_t n = trace.size();
  const double df = 1.0 / (trace.sample_period_s * static_cast<double>(n));
  const auto st = fft::real_forward(trace.samples);
  const auto sr = fft::real_forward(shot_ref.samples);
  double pt = 0.0;
  double pr = 0.0;
  for (std::size_t k = 1; k < st.size(); ++k) {
    const double f = df * static_cast<double>(k);
    if (f < band.f_lo_hz || f > band.f_hi_hz) continue;
    pt += std::norm(st[k]);
    pr += std::norm(sr[k]);
  }
  if (pr == 0.0) throw std::invalid_argument("band_power: empty band");
  return pt / pr;
}

double joint_squeezing_db(const ExperimentShot& shot, SqueezedJoint joint,
                          double center_hz, double rbw_hz,
                          const QuadratureTrace& shot_ref) {
  const std::size_t n = shot.size();
  QuadratureTrace j;
  j.sample_period_s = shot.sample_period_s();
  j.samples.resize(n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (joint == SqueezedJoint::XMinus) {
    for (std::size_t i = 0; i < n; ++i) {
      j.samples[i] = inv_sqrt2 * (shot.probe_x.samples[i] - shot.conj_x.samples[i]);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      j.samples[i] = inv_sqrt2 * (shot.probe_y.samples[i] + shot.conj_y.samples[i]);
    }
  }
  const NoiseBand rbw{center_hz - 0.5 * rbw_hz, center_hz + 0.5 * rbw_hz};
  return 10.0 * std::log10(band_power(j, rbw, shot_ref));
}

std::vector<double> cross_correlation(const std::vector<double>& f,
                                      const std::vector<double>& g) {
  if (f.size() != g.size() || f.empty()) {
    throw std::invalid_argument("cross_correlation: traces must match");
  }
  const std::size_t n = f.size();
  const std::size_t m = next_fft_size(2 * n - 1);
  std::vector<std::complex<double>> fa(m), ga(m);
  for (std::size_t i = 0; i < n; ++i) {
    fa[i] = f[i];
    ga[i] = g[i];
  }
  auto fs = fft::complex_dft(fa, -1);
  auto gs = fft::complex_dft(ga, -1);
  for (std::size_t k = 0; k < m; ++k) fs[k] = std::conj(fs[k]) * gs[k];
  auto c = fft::complex_dft(fs, +1);
  std::vector<double> out(2 * n - 1);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t lag = 0; lag < n; ++lag) {
    out[n - 1 + lag] = c[lag].real() * scale;
    if (lag > 0) out[n - 1 - lag] = c[m - lag].real() * scale;
  }
  return out;
}

std::vector<double> normalized_cross_correlation(const std::vector<double>& f,
                                                 const std::vector<double>& g) {
  double sf = 0.0;
  double sg = 0.0;
  for (double x : f) sf += x * x;
  for (double x : g) sg += x * x;
  if (sf == 0.0 || sg == 0.0) {
    throw std::invalid_argument("normalized_cross_correlation: zero trace");
  }
  auto out = cross_correlation(f, g);
  const double scale = 1.0 / std::sqrt(sf * sg);
  for (double& v : out) v *= scale;
  return out;
}

std::optional<double> interpolate_peak(const std::vector<double>& axis,
                                       const std::vector<double>& curve,
                                       bool maximize) {
  if (axis.size() != curve.size() || curve.size() < 3) return std::nullopt;
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (maximize ? curve[i] > curve[best] : curve[i] < curve[best]) best = i;
  }
  if (best == 0 || best + 1 == curve.size()) return std::nullopt;
  const double y0 = curve[best - 1];
  const double y1 = curve[best];
  const double y2 = curve[best + 1];
  const double denom = y0 - 2.0 * y1 + y2;
  double delta = 0.0;
  if (denom != 0.0) delta = 0.5 * (y0 - y2) / denom;
  delta = std::clamp(delta, -0.5, 0.5);
  const double step = axis[best + 1] - axis[best];
  return axis[best] + delta * step;
}

namespace {

// Discrete peak position (no interpolation) for the histogram statistic.
std::optional<std::size_t> discrete_peak(const std::vector<double>& curve,
                                         bool maximize) {
  if (curve.size() < 3) return std::nullopt;
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (maximize ? curve[i] > curve[best] : curve[i] < curve[best]) best = i;
  }
  if (best == 0 || best + 1 == curve.size()) return std::nullopt;
  return best;
}

double histogram_mode(const std::vector<std::size_t>& bins,
                      const std::vector<double>& axis) {
  std::map<std::size_t, std::size_t> counts;
  for (std::size_t b : bins) ++counts[b];
  std::size_t best_bin = 0;
  std::size_t best_count = 0;
  for (const auto& [bin, count] : counts) {
    if (count > best_count) {
      best_bin = bin;
      best_count = count;
    }
  }
  return axis[best_bin];
}

}  // namespace

AdvanceEstimate peak_advance(const std::vector<std::vector<double>>& ref_curves,
                             const std::vector<std::vector<double>>& test_curves,
                             const std::vector<double>& delays_s,
                             bool maximize) {
  if (ref_curves.size() < 2 || test_curves.size() < 2) {
    throw std::invalid_argument("peak_advance: need >= 2 curves per condition");
  }
  AdvanceEstimate est;
  std::vector<double> ref_peaks, test_peaks;
  std::vector<std::size_t> ref_bins, test_bins;
  for (const auto& c : ref_curves) {
    const auto p = interpolate_peak(delays_s, c, maximize);
    const auto b = discrete_peak(c, maximize);
    if (p && b) {
      ref_peaks.push_back(*p);
      ref_bins.push_back(*b);
    } else {
      ++est.excluded;
    }
  }
  for (const auto& c : test_curves) {
    const auto p = interpolate_peak(delays_s, c, maximize);
    const auto b = discrete_peak(c, maximize);
    if (p && b) {
      test_peaks.push_back(*p);
      test_bins.push_back(*b);
    } else {
      ++est.excluded;
    }
  }
  if (ref_peaks.size() < 2 || test_peaks.size() < 2) {
    throw std::invalid_argument("peak_advance: too many flat curves");
  }
  est.advance_s = mean_of(test_peaks) - mean_of(ref_peaks);
  if (test_peaks.size() == ref_peaks.size()) {
    // Equal trial counts: treat trial i of each condition as a pair and take
    // the standard error of the per-trial advancements. When both conditions
    // share source shots (common random numbers) this reflects the actual
    // spread of the advancement statistic; for independent shots it is an
    // unbiased estimate of the same combined error.
    std::vector<double> diffs(test_peaks.size());
    for (std::size_t i = 0; i < diffs.size(); ++i) {
      diffs[i] = test_peaks[i] - ref_peaks[i];
    }
    est.sem_s = sem_of(diffs);
  } else {
    const double se_r = sem_of(ref_peaks);
    const double se_t = sem_of(test_peaks);
    est.sem_s = std::sqrt(se_r * se_r + se_t * se_t);
  }
  est.histogram_mode_s =
      histogram_mode(test_bins, delays_s) - histogram_mode(ref_bins, delays_s);
  return est;
}

namespace {

EdgeTiming edge_crossing(const std::vector<double>& t,
                         const std::vector<double>& curve,
                         const std::vector<double>& sems, double level,
                         bool leading) {
  if (t.size() != curve.size() || curve.size() < 3) {
    throw std::invalid_argument("edge timing: bad curve");
  }
  const double peak = *std::max_element(curve.begin(), curve.end());
  const double thr = level * peak;
  const std::size_t n = curve.size();
  // Leading: first upward crossing; trailing: last downward crossing.
  for (std::size_t step = 1; step < n; ++step) {
    const std::size_t i = leading ? step : n - step;
    const double a = curve[i - 1];
    const double b = curve[i];
    const bool crossing = leading ? (a < thr && b >= thr) : (a >= thr && b < thr);
    if (!crossing) continue;
    const double dt = t[i] - t[i - 1];
    const double slope = (b - a) / dt;
    const double frac = (thr - a) / (b - a);
    EdgeTiming e;
    e.time_s = t[i - 1] + frac * dt;
    if (!sems.empty()) {
      const double sem = (1.0 - frac) * sems[i - 1] + frac * sems[i];
      e.uncertainty_s = std::abs(slope) > 0.0 ? sem / std::abs(slope) : 0.0;
    }
    return e;
  }
  throw std::invalid_argument("edge timing: curve never crosses the level");
}

}  // namespace

EdgeTiming leading_edge(const std::vector<double>& delays_s,
                        const std::vector<double>& curve,
                        const std::vector<double>& sems, double level) {
  return edge_crossing(delays_s, curve, sems, level, true);
}

EdgeTiming trailing_edge(const std::vector<double>& delays_s,
                         const std::vector<double>& curve,
                         const std::vector<double>& sems, double level) {
  return edge_crossing(delays_s, curve, sems, level, false);
}

namespace {

// Band-restricted, filter-weighted spectral data shared by the sweep and
// the covariance estimator.
struct BandGrid {
  std::vector<std::size_t> bins;
  std::vector<double> weight;  // squared filter amplitude
  double shot_power = 0.0;     // sum w |ref_k|^2
  std::size_t n = 0;
};

BandGrid make_band_grid(const QuadratureTrace& shot_ref, const NoiseBand& band,
                        const BandpassSpec& filter) {
  filter.validate(shot_ref.nyquist_hz());
  if (!(band.f_lo_hz < band.f_hi_hz) || band.f_hi_hz > shot_ref.nyquist_hz()) {
    throw std::invalid_argument("delay sweep: band outside the sampled grid");
  }
  BandGrid g;
  g.n = shot_ref.size();
  const double df = 1.0 / (shot_ref.sample_period_s * static_cast<double>(g.n));
  const auto ref = fft::real_forward(shot_ref.samples);
  for (std::size_t k = 1; k + 1 < ref.size(); ++k) {
    const double f = df * static_cast<double>(k);
    if (f < band.f_lo_hz || f > band.f_hi_hz) continue;
    const double a = filter.amplitude_response(f);
    g.bins.push_back(k);
    g.weight.push_back(a * a);
    g.shot_power += a * a * std::norm(ref[k]);
  }
  if (g.bins.empty()) throw std::invalid_argument("delay sweep: empty band");
  return g;
}

struct ShotBandData {
  double vxp, vyp, vxc, vyc;  // normalized band variances
  double cxyp, cxyc;          // intra-mode covariances
  // Per-delay probe-conjugate covariances and correlation curve.
  std::vector<double> cxx, cxy, cyx, cyy, corr;
};

ShotBandData analyze_shot(const ExperimentShot& shot, const BandGrid& grid,
                          const std::vector<long>& delay_samples) {
  const auto px = fft::real_forward(shot.probe_x.samples);
  const auto py = fft::real_forward(shot.probe_y.samples);
  const auto cx = fft::real_forward(shot.conj_x.samples);
  const auto cy = fft::real_forward(shot.conj_y.samples);

  const std::size_t nb = grid.bins.size();
  const double inv_s0 = 1.0 / grid.shot_power;

  ShotBandData d;
  d.vxp = d.vyp = d.vxc = d.vyc = d.cxyp = d.cxyc = 0.0;
  double pxx_p = 0.0, pxx_c = 0.0;
  std::vector<std::complex<double>> zxx(nb), zxy(nb), zyx(nb), zyy(nb);
  std::vector<double> phase(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    const std::size_t k = grid.bins[i];
    const double w = grid.weight[i];
    d.vxp += w * std::norm(px[k]);
    d.vyp += w * std::norm(py[k]);
    d.vxc += w * std::norm(cx[k]);
    d.vyc += w * std::norm(cy[k]);
    d.cxyp += w * (std::conj(px[k]) * py[k]).real();
    d.cxyc += w * (std::conj(cx[k]) * cy[k]).real();
    zxx[i] = w * std::conj(px[k]) * cx[k];
    zxy[i] = w * std::conj(px[k]) * cy[k];
    zyx[i] = w * std::conj(py[k]) * cx[k];
    zyy[i] = w * std::conj(py[k]) * cy[k];
    pxx_p += w * std::norm(px[k]);
    pxx_c += w * std::norm(cx[k]);
    phase[i] = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(grid.n);
  }
  d.vxp *= inv_s0;
  d.vyp *= inv_s0;
  d.vxc *= inv_s0;
  d.vyc *= inv_s0;
  d.cxyp *= inv_s0;
  d.cxyc *= inv_s0;

  const std::size_t nd = delay_samples.size();
  d.cxx.resize(nd);
  d.cxy.resize(nd);
  d.cyx.resize(nd);
  d.cyy.resize(nd);
  d.corr.resize(nd);
  const double corr_norm = 1.0 / std::sqrt(pxx_p * pxx_c);
  for (std::size_t j = 0; j < nd; ++j) {
    const double shift = static_cast<double>(delay_samples[j]);
    std::complex<double> sxx = 0.0, sxy = 0.0, syx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < nb; ++i) {
      const std::complex<double> rot = std::polar(1.0, phase[i] * shift);
      sxx += zxx[i] * rot;
      sxy += zxy[i] * rot;
      syx += zyx[i] * rot;
      syy += zyy[i] * rot;
    }
    d.cxx[j] = sxx.real() * inv_s0;
    d.cxy[j] = sxy.real() * inv_s0;
    d.cyx[j] = syx.real() * inv_s0;
    d.cyy[j] = syy.real() * inv_s0;
    d.corr[j] = sxx.real() * corr_norm;
  }
  return d;
}

Eigen::Matrix4d covariance_at(const ShotBandData& d, std::size_t j) {
  Eigen::Matrix4d m;
  m << d.vxp, d.cxyp, d.cxx[j], d.cxy[j],
       d.cxyp, d.vyp, d.cyx[j], d.cyy[j],
       d.cxx[j], d.cyx[j], d.vxc, d.cxyc,
       d.cxy[j], d.cyy[j], d.cxyc, d.vyc;
  return m;
}

std::vector<long> delays_to_samples(const std::vector<double>& delays_s,
                                    double sample_period_s, std::size_t n) {
  std::vector<long> out;
  out.reserve(delays_s.size());
  for (double d : delays_s) {
    const double k = d / sample_period_s;
    const long ki = std::lround(k);
    if (std::abs(k - static_cast<double>(ki)) > 1e-6) {
      throw std::invalid_argument(
          "delay sweep: delays must be integer multiples of the sample period");
    }
    if (static_cast<std::size_t>(std::abs(ki)) >= n) {
      throw std::invalid_argument("delay sweep: delay beyond trace length");
    }
    out.push_back(ki);
  }
  return out;
}

}  // namespace

EstimatedCovariance estimate_covariance(const std::vector<ExperimentShot>& shots,
                                        double delay_s, const NoiseBand& band,
                                        const BandpassSpec& filter,
                                        const QuadratureTrace& shot_ref,
                                        double flag_tol) {
  if (shots.empty()) throw std::invalid_argument("estimate_covariance: no shots");
  const BandGrid grid = make_band_grid(shot_ref, band, filter);
  const std::vector<long> delay =
      delays_to_samples({delay_s}, shots[0].sample_period_s(), shots[0].size());
  Eigen::Matrix4d sum = Eigen::Matrix4d::Zero();
  for (const auto& shot : shots) {
    const ShotBandData d = analyze_shot(shot, grid, delay);
    sum += covariance_at(d, 0);
  }
  sum /= static_cast<double>(shots.size());
  EstimatedCovariance est{TwoModeCovariance(0.5 * (sum + sum.transpose()), 1e-6)};
  const SymplecticSpectrum s = symplectic_eigenvalues(est.cov);
  est.min_symplectic = std::min(s.nu[0], s.nu[1]);
  est.physical = est.min_symplectic >= 1.0 - flag_tol;
  return est;
}

namespace {

DelaySweepResult reduce_sweep(const std::vector<ShotBandData>& per_shot,
                              const std::vector<double>& delays_s);

DelaySweepResult run_sweep(
    const std::function<const ExperimentShot&(std::size_t, ExperimentShot&)>&
        fetch,
    std::size_t ns, const QuadratureTrace& shot_ref,
    const DelaySweepOptions& options) {
  if (ns == 0) throw std::invalid_argument("delay_sweep: no shots");
  const BandGrid grid = make_band_grid(shot_ref, options.band, options.filter);
  const std::vector<long> delay_samples = delays_to_samples(
      options.delays_s, shot_ref.sample_period_s, shot_ref.size());

  std::vector<ShotBandData> per_shot(ns);
  const int jobs = std::max(1, options.jobs);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&]() {
    ExperimentShot scratch;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= ns || failed.load()) break;
      const ExperimentShot& shot = fetch(i, scratch);
      if (shot.size() != shot_ref.size() ||
          shot.sample_period_s() != shot_ref.sample_period_s) {
        failed.store(true);
        break;
      }
      per_shot[i] = analyze_shot(shot, grid, delay_samples);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) {
    throw std::invalid_argument(
        "delay_sweep: shots must share the reference length and rate");
  }
  return reduce_sweep(per_shot, options.delays_s);
}

DelaySweepResult reduce_sweep(const std::vector<ShotBandData>& per_shot,
                              const std::vector<double>& delays_s) {
  const std::size_t ns = per_shot.size();
  const std::size_t nd = delays_s.size();
  DelaySweepResult res;
  res.delays_s = delays_s;
  res.insep_mean.resize(nd);
  res.insep_sem.resize(nd);
  res.sqz_db_mean.resize(nd);
  res.sqz_db_sem.resize(nd);
  res.mi_mean.resize(nd);
  res.mi_sem.resize(nd);
  res.corr_curves.resize(ns);
  res.insep_curves.resize(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    res.corr_curves[i] = per_shot[i].corr;
    res.insep_curves[i].resize(nd);
  }

  std::vector<double> insep(ns), sqz(ns), mi(ns);
  for (std::size_t j = 0; j < nd; ++j) {
    for (std::size_t i = 0; i < ns; ++i) {
      const ShotBandData& d = per_shot[i];
      const double var_xm = 0.5 * (d.vxp + d.vxc) - d.cxx[j];
      const double var_yp = 0.5 * (d.vyp + d.vyc) + d.cyy[j];
      insep[i] = var_xm + var_yp;
      sqz[i] = 10.0 * std::log10(std::max(0.5 * insep[i], 1e-12));
      const auto [mi_val, min_nu] = mi_clamped(covariance_at(d, j));
      mi[i] = mi_val;
      if (min_nu < 0.95) ++res.unphysical_flags;
      res.insep_curves[i][j] = insep[i];
    }
    res.insep_mean[j] = mean_of(insep);
    res.insep_sem[j] = sem_of(insep);
    res.sqz_db_mean[j] = mean_of(sqz);
    res.sqz_db_sem[j] = sem_of(sqz);
    res.mi_mean[j] = mean_of(mi);
    res.mi_sem[j] = sem_of(mi);
  }
  return res;
}

}  // namespace

DelaySweepResult delay_sweep(const std::vector<ExperimentShot>& shots,
                             const QuadratureTrace& shot_ref,
                             const DelaySweepOptions& options) {
  auto fetch = [&shots](std::size_t i, ExperimentShot&) -> const ExperimentShot& {
    return shots[i];
  };
  return run_sweep(fetch, shots.size(), shot_ref, options);
}

DelaySweepResult delay_sweep_stream(
    const std::function<ExperimentShot(std::size_t)>& source,
    std::size_t n_shots, const QuadratureTrace& shot_ref,
    const DelaySweepOptions& options) {
  auto fetch = [&source](std::size_t i,
                         ExperimentShot& scratch) -> const ExperimentShot& {
    scratch = source(i);
    return scratch;
  };
  return run_sweep(fetch, n_shots, shot_ref, options);
}

DelaySweepResult delay_sweep_inseparability(
    const std::vector<ExperimentShot>& shots, const QuadratureTrace& shot_ref,
    const DelaySweepOptions& options) {
  return delay_sweep(shots, shot_ref, options);
}

DelaySweepResult delay_sweep_mutual_information(
    const std::vector<ExperimentShot>& shots, const QuadratureTrace& shot_ref,
    const DelaySweepOptions& options) {
  return delay_sweep(shots, shot_ref, options);
}

std::vector<double> make_delay_grid(double min_s, double max_s, double step_s) {
  if (!(step_s > 0.0) || !(max_s >= min_s)) {
    throw std::invalid_argument("make_delay_grid: bad range");
  }
  std::vector<double> out;
  const long k0 = std::lround(min_s / step_s);
  const long k1 = std::lround(max_s / step_s);
  for (long k = k0; k <= k1; ++k) out.push_back(static_cast<double>(k) * step_s);
  return out;
}

}  // namespace tbl
