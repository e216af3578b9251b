#include "twinbeam/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace tbl {

namespace {

// Symplectic form for ordering (X_p, Y_p, X_c, Y_c).
Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  return omega;
}

}  // namespace

TwoModeCovariance::TwoModeCovariance(const Eigen::Matrix4d& entries,
                                     double symmetry_tol) {
  const double asym = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= symmetry_tol)) {
    throw std::invalid_argument(
        "TwoModeCovariance: matrix not symmetric (max asymmetry " +
        std::to_string(asym) + ")");
  }
  m_ = 0.5 * (entries + entries.transpose());
}

bool TwoModeCovariance::is_physical(double tol) const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0) return false;
  const SymplecticSpectrum s = symplectic_eigenvalues(*this);
  return s.nu[0] >= 1.0 - tol && s.nu[1] >= 1.0 - tol;
}

TwoModeCovariance epr_covariance(double r) {
  if (r < 0.0) throw std::invalid_argument("epr_covariance: r must be >= 0");
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity() * ch;
  m(0, 2) = m(2, 0) = sh;
  m(1, 3) = m(3, 1) = -sh;
  return TwoModeCovariance(m);
}

TwoModeCovariance apply_phase_insensitive_gain(const TwoModeCovariance& cov,
                                               double gain, Mode mode) {
  if (gain < 1.0) {
    throw std::invalid_argument(
        "apply_phase_insensitive_gain: G must be >= 1 (attenuation is out of "
        "scope)");
  }
  if (!cov.is_physical()) {
    throw std::invalid_argument(
        "apply_phase_insensitive_gain: input covariance unphysical");
  }
  // a -> mu a + nu b^dag on one mode, vacuum-seeded idler:
  // gamma -> S gamma S^T + (G-1) P, with S = diag(1,1,sqrt(G),sqrt(G)) (or
  // the probe analogue) and P the projector onto the amplified mode.
  const int off = (mode == Mode::Probe) ? 0 : 2;
  Eigen::Matrix4d s = Eigen::Matrix4d::Identity();
  s(off, off) = s(off + 1, off + 1) = std::sqrt(gain);
  Eigen::Matrix4d m = s * cov.matrix() * s.transpose();
  m(off, off) += gain - 1.0;
  m(off + 1, off + 1) += gain - 1.0;
  return TwoModeCovariance(m);
}

SymplecticSpectrum symplectic_eigenvalues(const TwoModeCovariance& cov) {
  const Eigen::Matrix4d m = symplectic_form() * cov.matrix();
  Eigen::EigenSolver<Eigen::Matrix4d> es(m);
  std::vector<double> moduli(4);
  for (int i = 0; i < 4; ++i) moduli[i] = std::abs(es.eigenvalues()(i));
  std::sort(moduli.begin(), moduli.end(), std::greater<double>());
  // Eigenvalues come in +-i nu pairs; average the pairs to deduplicate.
  return SymplecticSpectrum{{0.5 * (moduli[0] + moduli[1]),
                             0.5 * (moduli[2] + moduli[3])}};
}

double symplectic_eigenvalue_1mode(const Eigen::Matrix2d& block) {
  const double det = block.determinant();
  if (det < 0.0) {
    throw std::invalid_argument("marginal block has negative determinant");
  }
  return std::sqrt(det);
}

double entropy_of_symplectic_eigenvalue(double nu) {
  if (nu < 1.0 - 1e-9) {
    throw std::invalid_argument(
        "entropy: symplectic eigenvalue " + std::to_string(nu) +
        " < 1 signals an unphysical covariance matrix");
  }
  if (nu <= 1.0) return 0.0;
  const double up = 0.5 * (nu + 1.0);
  const double dn = 0.5 * (nu - 1.0);
  double s = up * std::log2(up);
  if (dn > 0.0) s -= dn * std::log2(dn);
  return s;
}

double von_neumann_entropy(const SymplecticSpectrum& spectrum) {
  return entropy_of_symplectic_eigenvalue(spectrum.nu[0]) +
         entropy_of_symplectic_eigenvalue(spectrum.nu[1]);
}

double mutual_information(const TwoModeCovariance& cov) {
  const double s_p = entropy_of_symplectic_eigenvalue(
      std::max(1.0, symplectic_eigenvalue_1mode(cov.probe_block())));
  const double s_c = entropy_of_symplectic_eigenvalue(
      std::max(1.0, symplectic_eigenvalue_1mode(cov.conjugate_block())));
  const double s_joint = von_neumann_entropy(symplectic_eigenvalues(cov));
  return s_p + s_c - s_joint;
}

double inseparability(const TwoModeCovariance& cov) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::Vector4d xm(inv_sqrt2, 0.0, -inv_sqrt2, 0.0);
  Eigen::Vector4d yp(0.0, inv_sqrt2, 0.0, inv_sqrt2);
  return xm.dot(cov.matrix() * xm) + yp.dot(cov.matrix() * yp);
}

double inseparability_closed_form(double r, double gain) {
  if (r < 0.0 || gain < 1.0) {
    throw std::invalid_argument(
        "inseparability_closed_form: need r >= 0 and G >= 1");
  }
  return (1.0 + gain) * std::cosh(2.0 * r) -
         2.0 * std::sqrt(gain) * std::sinh(2.0 * r) + (gain - 1.0);
}

double entanglement_breaking_gain(double r) {
  if (r < 0.0) throw std::invalid_argument("entanglement_breaking_gain: r < 0");
  if (r == 0.0) return 1.0;
  double lo = 1.0;
  double hi = 2.0;
  while (inseparability_closed_form(r, hi) < 2.0) hi *= 2.0;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (inseparability_closed_form(r, mid) < 2.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

TwoModeCovariance partial_transpose(const TwoModeCovariance& cov) {
  Eigen::Matrix4d f = Eigen::Matrix4d::Identity();
  f(3, 3) = -1.0;
  return TwoModeCovariance(f * cov.matrix() * f);
}

std::string covariance_to_csv(const TwoModeCovariance& cov) {
  std::ostringstream os;
  os.precision(15);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (j) os << ',';
      os << cov(i, j);
    }
    os << '\n';
  }
  return os.str();
}

TwoModeCovariance covariance_from_csv(const std::string& csv) {
  Eigen::Matrix4d m;
  std::istringstream is(csv);
  std::string line;
  for (int i = 0; i < 4; ++i) {
    if (!std::getline(is, line)) {
      throw std::invalid_argument("covariance CSV: expected 4 rows");
    }
    std::istringstream row(line);
    std::string cell;
    for (int j = 0; j < 4; ++j) {
      if (!std::getline(row, cell, ',')) {
        throw std::invalid_argument("covariance CSV: expected 4 columns");
      }
      m(i, j) = std::stod(cell);
    }
  }
  return TwoModeCovariance(m);
}

}  // namespace tbl
