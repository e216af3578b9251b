#include "twinbeam/trace.hpp"

namespace tbl {

const char* to_string(TraceMode mode) {
  switch (mode) {
    case TraceMode::Probe:
      return "probe";
    case TraceMode::Conjugate:
      return "conjugate";
    case TraceMode::ShotNoise:
      return "shotnoise";
  }
  return "unknown";
}

const char* to_string(Quadrature quad) {
  return quad == Quadrature::X ? "x" : "y";
}

const char* to_string(SqueezedJoint joint) {
  return joint == SqueezedJoint::XMinus ? "x_minus" : "y_plus";
}

}  // namespace tbl
