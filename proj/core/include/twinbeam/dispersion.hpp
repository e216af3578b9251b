#pragma once

#include <complex>
#include <string>
#include <vector>

// Dispersive gain medium model: a parameterized intensity gain profile, the
// minimum-phase response obtained from it via a numerical Kramers-Kronig
// (Hilbert transform) construction, and the group delay in a detection band.

namespace tbl {

struct LorentzianLine {
  double center_hz;
  double width_hz;   // half-width gamma, > 0
  double peak_gain;  // added intensity gain at line center, >= 0
};

// Intensity gain G(f) on a strictly increasing, uniformly spaced grid.
class GainProfile {
 public:
  GainProfile(std::vector<double> freq_hz, std::vector<double> gain);

  const std::vector<double>& freq() const { return freq_; }
  const std::vector<double>& gain() const { return gain_; }
  double spacing_hz() const { return freq_[1] - freq_[0]; }

 private:
  std::vector<double> freq_;
  std::vector<double> gain_;
};

// Complex transfer function of the medium sampled on the profile grid.
// amplitude = sqrt(G), phase from the Kramers-Kronig construction,
// group_delay = -dphase/d(2 pi f), noise_coupling = G - 1 (the |nu|^2 of the
// phase-insensitive amplifier at that frequency).
struct MediumResponse {
  std::vector<double> freq_hz;
  std::vector<double> amplitude;
  std::vector<double> phase_rad;
  std::vector<double> group_delay_s;
  std::vector<double> noise_coupling;
};

// G(f) = 1 + sum_i peak_i * gamma_i^2 / ((f - f_i)^2 + gamma_i^2).
// Lines must lie inside the grid interior.
GainProfile synth_gain_profile(const std::vector<LorentzianLine>& lines,
                               const std::vector<double>& freq_hz);

// Minimum-phase response: phase = -H[ln sqrt(G)] via an FFT Hilbert
// transform with mirrored edge padding to 4x the grid. Requires the gain to
// settle to 1 at the grid edges within `edge_tol` and G >= 1 everywhere.
MediumResponse kramers_kronig_phase(const GainProfile& profile,
                                    double edge_tol = 1e-3);

// Gain-weighted mean of the group delay over [f_lo, f_hi]. Negative values
// are an advance (fast light).
double group_delay_in_band(const MediumResponse& resp, double f_lo_hz,
                           double f_hi_hz);

struct TransferPoint {
  std::complex<double> amplitude;  // |t| e^{i phase}
  double noise_coupling;           // |nu|^2 = |t|^2 - 1
};

// Linear interpolation of (amplitude, phase, noise_coupling) at f.
// Throws if f is outside the grid.
TransferPoint transfer_at(const MediumResponse& resp, double f_hz);

// As transfer_at, but frequencies outside the grid return the transparent
// medium (t = 1, no noise); the gain has settled to 1 there by construction.
TransferPoint transfer_or_identity(const MediumResponse& resp, double f_hz);

// CSV with header "freq_hz,gain".
std::string gain_profile_to_csv(const GainProfile& profile);
GainProfile gain_profile_from_csv(const std::string& csv);

// CSV with header "freq_hz,amplitude,phase_rad,group_delay_s,noise_coupling".
std::string medium_response_to_csv(const MediumResponse& resp);
MediumResponse medium_response_from_csv(const std::string& csv);

}  // namespace tbl
