#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tbl {

enum class TraceMode : std::uint8_t { Probe = 0, Conjugate = 1, ShotNoise = 2 };
enum class Quadrature : std::uint8_t { X = 0, Y = 1 };
enum class SqueezedJoint : std::uint8_t { XMinus = 0, YPlus = 1 };

// A sampled homodyne photocurrent record in shot-noise-normalized units.
struct QuadratureTrace {
  std::vector<double> samples;
  double sample_period_s = 0.4e-9;
  TraceMode mode = TraceMode::ShotNoise;
  Quadrature quadrature = Quadrature::X;
  std::uint64_t seed_tag = 0;

  std::size_t size() const { return samples.size(); }
  double nyquist_hz() const { return 0.5 / sample_period_s; }
};

// One simulated trial: both quadratures of both beams, sharing length and
// sample period.
struct ExperimentShot {
  QuadratureTrace probe_x;
  QuadratureTrace probe_y;
  QuadratureTrace conj_x;
  QuadratureTrace conj_y;
  SqueezedJoint squeezed_joint = SqueezedJoint::XMinus;
  std::string config_digest;

  std::size_t size() const { return probe_x.size(); }
  double sample_period_s() const { return probe_x.sample_period_s; }
};

const char* to_string(TraceMode mode);
const char* to_string(Quadrature quad);
const char* to_string(SqueezedJoint joint);

}  // namespace tbl
