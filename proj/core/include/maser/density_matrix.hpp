#pragma once

#include <complex>

#include <Eigen/Dense>

namespace maser {

using Complex = std::complex<double>;
using Matrix4 = Eigen::Matrix4cd;
using Vector16 = Eigen::Matrix<Complex, 16, 1>;
using Matrix16 = Eigen::Matrix<Complex, 16, 16>;

/// Result of a density-matrix physicality check.
struct DensityCheck {
  /// max_ij |rho_ij - conj(rho_ji)|
  double hermiticity_error;
  /// |tr(rho) - 1|
  double trace_error;
  double min_eigenvalue;
  /// True when the smallest eigenvalue lies in [-1e-6, -1e-9): tolerated as
  /// numerical noise but flagged (and reported once on stderr).
  bool warning;
};

/// Validates Hermiticity (<= 1e-12), unit trace (<= 1e-12) and positivity
/// (smallest eigenvalue >= -1e-9, with values down to -1e-6 tolerated as a
/// warning). Throws NonPhysical when a threshold is exceeded.
DensityCheck validate_density_matrix(const Matrix4& rho);

/// Column-major stacking: entry (r, c) maps to component 4*c + r.
Vector16 vectorize_state(const Matrix4& rho);
Matrix4 unvectorize_state(const Vector16& v);

}  // namespace maser
