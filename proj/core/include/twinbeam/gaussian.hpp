#pragma once

#include <Eigen/Dense>
#include <array>

// Two-mode Gaussian state calculus in shot-noise units (vacuum quadrature
// variance = 1). Mode ordering is fixed as (X_p, Y_p, X_c, Y_c) throughout.

namespace tbl {

enum class Mode { Probe, Conjugate };

// Symplectic eigenvalues of a two-mode covariance matrix, sorted descending.
// Physical states have both values >= 1; pure states have both equal to 1.
struct SymplecticSpectrum {
  std::array<double, 2> nu;
};

// 4x4 real symmetric quadrature covariance matrix.
class TwoModeCovariance {
 public:
  // Symmetrizes the input. Throws std::invalid_argument if the matrix is
  // not symmetric to within `symmetry_tol`.
  explicit TwoModeCovariance(const Eigen::Matrix4d& entries,
                             double symmetry_tol = 1e-9);

  const Eigen::Matrix4d& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  Eigen::Matrix2d probe_block() const { return m_.block<2, 2>(0, 0); }
  Eigen::Matrix2d conjugate_block() const { return m_.block<2, 2>(2, 2); }

  // Every symplectic eigenvalue >= 1 - tol and positive definite.
  bool is_physical(double tol = 1e-9) const;

 private:
  Eigen::Matrix4d m_;
};

// Squeezing parameter r >= 0 and intensity gain G >= 1.
struct SqueezeGainParams {
  double r;
  double gain;
};

// Pure EPR (two-mode squeezed vacuum) covariance: diagonal cosh(2r),
// off-diagonal block diag(sinh(2r), -sinh(2r)). Throws on r < 0.
TwoModeCovariance epr_covariance(double r);

// Phase-insensitive amplifier a -> mu a + nu b^dag with |mu|^2 = G acting on
// one mode: the mode's block maps to G*block + (G-1)*I, cross blocks scale
// by sqrt(G). Throws on G < 1 or unphysical input.
TwoModeCovariance apply_phase_insensitive_gain(const TwoModeCovariance& cov,
                                               double gain, Mode mode);

// Moduli of the eigenvalues of i*Omega*gamma, deduplicated to two values.
SymplecticSpectrum symplectic_eigenvalues(const TwoModeCovariance& cov);

// Single-value version used for the 2x2 marginal blocks: sqrt(det).
double symplectic_eigenvalue_1mode(const Eigen::Matrix2d& block);

// Entropy contribution of one symplectic eigenvalue, in bits:
// f(nu) = ((nu+1)/2)log2((nu+1)/2) - ((nu-1)/2)log2((nu-1)/2), f(1) = 0.
// Values within 1e-9 below 1 are clamped to 1; smaller values throw.
double entropy_of_symplectic_eigenvalue(double nu);

// Sum of f(nu) over the spectrum, in bits.
double von_neumann_entropy(const SymplecticSpectrum& spectrum);

// I = S(probe marginal) + S(conjugate marginal) - S(joint), in bits.
double mutual_information(const TwoModeCovariance& cov);

// Duan inseparability <dX-^2> + <dY+^2> with X- = (X_p - X_c)/sqrt(2),
// Y+ = (Y_p + Y_c)/sqrt(2). A value < 2 certifies entanglement.
double inseparability(const TwoModeCovariance& cov);

// Closed form (1+G)cosh(2r) - 2 sqrt(G) sinh(2r) + (G-1) for the EPR state
// after gain G on one mode.
double inseparability_closed_form(double r, double gain);

// Smallest G >= 1 at which the closed-form inseparability reaches 2,
// found by bisection to |dG| <= 1e-6. r = 0 returns 1.
double entanglement_breaking_gain(double r);

// Momentum reversal on the conjugate: flips the sign of the Y_c row and
// column. Involution.
TwoModeCovariance partial_transpose(const TwoModeCovariance& cov);

// CSV serialization: 4 rows x 4 columns, >= 12 significant digits.
std::string covariance_to_csv(const TwoModeCovariance& cov);
TwoModeCovariance covariance_from_csv(const std::string& csv);

}  // namespace tbl
