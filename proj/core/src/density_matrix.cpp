#include "maser/density_matrix.hpp"

#include <iostream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "maser/errors.hpp"

namespace maser {

DensityCheck validate_density_matrix(const Matrix4& rho) {
  DensityCheck check{};
  check.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  check.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));

  Eigen::SelfAdjointEigenSolver<Matrix4> es(0.5 * (rho + rho.adjoint()));
  check.min_eigenvalue = es.eigenvalues().minCoeff();
  check.warning = false;

  if (check.hermiticity_error > 1e-12) {
    std::ostringstream msg;
    msg << "density matrix is not Hermitian (max deviation "
        << check.hermiticity_error << " > 1e-12)";
    throw NonPhysical(msg.str());
  }
  if (check.trace_error > 1e-12) {
    std::ostringstream msg;
    msg << "density matrix trace deviates from 1 by " << check.trace_error
        << " (> 1e-12)";
    throw NonPhysical(msg.str());
  }
  if (check.min_eigenvalue < -1e-6) {
    std::ostringstream msg;
    msg << "density matrix has negative eigenvalue " << check.min_eigenvalue
        << " (< -1e-6)";
    throw NonPhysical(msg.str());
  }
  if (check.min_eigenvalue < -1e-9) {
    check.warning = true;
    std::cerr << "warning: density matrix eigenvalue " << check.min_eigenvalue
              << " is slightly negative (tolerated down to -1e-6)\n";
  }
  return check;
}

Vector16 vectorize_state(const Matrix4& rho) {
  Vector16 v;
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 4; ++r) v(4 * c + r) = rho(r, c);
  return v;
}

Matrix4 unvectorize_state(const Vector16& v) {
  Matrix4 rho;
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 4; ++r) rho(r, c) = v(4 * c + r);
  return rho;
}

}  // namespace maser
