#pragma once

#include <cstdint>

#include "twinbeam/dispersion.hpp"
#include "twinbeam/trace.hpp"

// Synthesis of shot-noise-calibrated twin-beam homodyne traces and
// propagation of one mode through a dispersive gain medium.

namespace tbl {

// Squeezing parameter vs detection frequency: flat `r` inside
// [f_lo, f_hi] with a raised-cosine roll-off over `rolloff_frac` of the band
// at each edge, zero outside.
struct SqueezingSpectrum {
  double r = 0.34657;  // -3 dB of two-mode squeezing
  double f_lo_hz = 20e3;
  double f_hi_hz = 3e6;
  double rolloff_frac = 0.1;

  double r_at(double f_hz) const;
};

// Frequency-domain synthesis of one trial. Joint quadratures X- and Y+ get
// variance e^{-2r(f)} per bin, X+ and Y- get e^{+2r(f)}, so single-beam
// spectra sit at cosh 2r(f) above shot noise. Deterministic per
// (seed, shot_index).
ExperimentShot synthesize_shot(const SqueezingSpectrum& spec,
                               std::size_t length, double sample_period_s,
                               std::uint64_t seed,
                               std::uint64_t shot_index = 0);

// Applies the medium to one mode of the shot, in the frequency domain:
// quadrature amplitudes multiplied by t(f + detuning_offset) plus an
// independent vacuum contribution weighted by sqrt(|t|^2 - 1) with the
// amplifier's conjugated-phase structure. Frequencies outside the medium
// grid pass untouched (the gain has settled to 1 there).
ExperimentShot propagate_through_medium(const ExperimentShot& shot,
                                        const MediumResponse& resp,
                                        TraceMode mode,
                                        double detuning_offset_hz,
                                        std::uint64_t seed,
                                        std::uint64_t shot_index = 0);

// Unit-variance white Gaussian trace; the denominator of all noise
// normalizations.
QuadratureTrace shot_noise_reference(std::size_t length,
                                     double sample_period_s,
                                     std::uint64_t seed,
                                     std::uint64_t shot_index = 0);

}  // namespace tbl
