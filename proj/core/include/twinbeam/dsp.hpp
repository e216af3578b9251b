#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "twinbeam/gaussian.hpp"
#include "twinbeam/trace.hpp"

// The measurement pipeline: band filtering, band-limited noise powers,
// cross-correlation, delay sweeps of squeezing / inseparability / mutual
// information, covariance estimation and edge timing.

namespace tbl {

// Zero-phase band-pass: first-order high-pass magnitude at the corner times
// a Hann-shaped low-pass taper (flat to `lowpass_flat_hz`, cosine roll-off
// with its -3 dB point at `lowpass_3db_hz`).
struct BandpassSpec {
  double highpass_corner_hz = 100e3;
  double lowpass_flat_hz = 1.0e6;
  double lowpass_3db_hz = 1.75e6;

  double amplitude_response(double f_hz) const;
  void validate(double nyquist_hz) const;
};

struct NoiseBand {
  double f_lo_hz = 100e3;
  double f_hi_hz = 2e6;
};

QuadratureTrace bandpass(const QuadratureTrace& trace,
                         const BandpassSpec& spec);

// Periodogram integrated over the band, normalized by the same integral for
// the shot-noise reference. The reference against itself returns 1 exactly.
double band_power(const QuadratureTrace& trace, const NoiseBand& band,
                  const QuadratureTrace& shot_ref);

// Band power of the squeezed joint quadrature in dB relative to shot noise,
// over a narrow band emulating a spectrum-analyzer RBW window. Used for the
// optional acquisition trigger.
double joint_squeezing_db(const ExperimentShot& shot, SqueezedJoint joint,
                          double center_hz, double rbw_hz,
                          const QuadratureTrace& shot_ref);

// Discrete cross-correlation (f*g)[n] = sum_m f[m] g[n+m], computed linearly
// via zero-padded FFT. values[i] is lag n = i - (N-1), n in [-(N-1), N-1].
std::vector<double> cross_correlation(const std::vector<double>& f,
                                      const std::vector<double>& g);

// Same, divided by sqrt(sum f^2 * sum g^2); a self-correlation peaks at
// exactly 1 at lag 0.
std::vector<double> normalized_cross_correlation(const std::vector<double>& f,
                                                 const std::vector<double>& g);

// Peak localization by 3-point parabolic interpolation around the discrete
// extremum (maximum if `maximize`, else minimum). Returns the interpolated
// abscissa in the units of `axis`. nullopt for curves with no interior
// extremum.
std::optional<double> interpolate_peak(const std::vector<double>& axis,
                                       const std::vector<double>& curve,
                                       bool maximize);

struct AdvanceEstimate {
  double advance_s = 0.0;       // mean(test peaks) - mean(ref peaks)
  double sem_s = 0.0;  // sem of per-trial advancements (paired when trial
                       // counts match, combined condition sems otherwise)
  double histogram_mode_s = 0.0;  // mode of discrete peak bins, test - ref
  std::size_t excluded = 0;     // trials without a usable extremum
};

// Per-trial peak locations of the given curves (shared delay axis); the
// advance is the difference of condition means.
AdvanceEstimate peak_advance(const std::vector<std::vector<double>>& ref_curves,
                             const std::vector<std::vector<double>>& test_curves,
                             const std::vector<double>& delays_s,
                             bool maximize = true);

struct EdgeTiming {
  double time_s = 0.0;
  double uncertainty_s = 0.0;
};

// First/last crossing of level*peak by linear interpolation; the timing
// uncertainty is the local value sem divided by the local slope.
// Throws if the curve never crosses that level.
EdgeTiming leading_edge(const std::vector<double>& delays_s,
                        const std::vector<double>& curve,
                        const std::vector<double>& sems, double level = 0.5);
EdgeTiming trailing_edge(const std::vector<double>& delays_s,
                         const std::vector<double>& curve,
                         const std::vector<double>& sems, double level = 0.5);

// Mutual information of an *estimated* covariance matrix: symplectic
// eigenvalues marginally below 1 (statistical noise near purity) are clamped
// to 1 instead of throwing. Returns {mi_bits, smallest eigenvalue seen
// before clamping}; values below ~0.95 indicate a genuinely bad estimate.
std::pair<double, double> estimated_mutual_information(
    const TwoModeCovariance& cov);

struct EstimatedCovariance {
  TwoModeCovariance cov;
  double min_symplectic = 1.0;
  bool physical = true;  // false flags a symplectic eigenvalue < 1 - tol
};

// Covariance matrix from band-limited variances / covariances of the
// filtered traces with the conjugate-side traces shifted by `delay_s`
// (positive delay pairs probe[m] with conjugate[m + k]).
EstimatedCovariance estimate_covariance(const std::vector<ExperimentShot>& shots,
                                        double delay_s, const NoiseBand& band,
                                        const BandpassSpec& filter,
                                        const QuadratureTrace& shot_ref,
                                        double flag_tol = 0.05);

struct DelaySweepOptions {
  std::vector<double> delays_s;  // integer multiples of the sample period
  NoiseBand band;
  BandpassSpec filter;
  int jobs = 1;
};

// Per-delay statistics over shots, plus the per-shot cross-correlation
// curves on the same delay axis (used for peak-advance statistics).
struct DelaySweepResult {
  std::vector<double> delays_s;
  std::vector<double> insep_mean, insep_sem;
  std::vector<double> sqz_db_mean, sqz_db_sem;
  std::vector<double> mi_mean, mi_sem;
  std::vector<std::vector<double>> corr_curves;   // per shot, X_p vs X_c
  std::vector<std::vector<double>> insep_curves;  // per shot
  std::size_t unphysical_flags = 0;  // covariance estimates with nu < 1 - tol
};

// The full sweep: inseparability, squeezing, MI and correlation curves in
// one pass over the shots. The conjugate-side delay is implemented as a
// circular shift (a per-bin phase rotation in the frequency domain).
DelaySweepResult delay_sweep(const std::vector<ExperimentShot>& shots,
                             const QuadratureTrace& shot_ref,
                             const DelaySweepOptions& options);

// Streaming variant: shots are produced on demand by `source(i)` and
// reduced to band spectra immediately, so the full trace set never has to
// fit in memory. `source` must be safe to call from multiple threads when
// options.jobs > 1.
DelaySweepResult delay_sweep_stream(
    const std::function<ExperimentShot(std::size_t)>& source,
    std::size_t n_shots, const QuadratureTrace& shot_ref,
    const DelaySweepOptions& options);

// Spec'd single-purpose entry points; both run the common sweep.
DelaySweepResult delay_sweep_inseparability(
    const std::vector<ExperimentShot>& shots, const QuadratureTrace& shot_ref,
    const DelaySweepOptions& options);
DelaySweepResult delay_sweep_mutual_information(
    const std::vector<ExperimentShot>& shots, const QuadratureTrace& shot_ref,
    const DelaySweepOptions& options);

// Uniform delay grid helper; all values are integer multiples of the sample
// period.
std::vector<double> make_delay_grid(double min_s, double max_s, double step_s);

}  // namespace tbl
