#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "maser/density_matrix.hpp"
#include "maser/params.hpp"

namespace maser {

/// Dimensionless competition parameter
///   k = gamma_h (1 + n_h2)(1 + p) / lambda_drive,
/// the ratio of mutual-coupling (dissipative) to entrainment (drive) rates.
/// Throws DivisionByZero when lambda_drive == 0.
double coupling_ratio(const MaserParams& prm);

enum class SyncBranch { cooperative, entrainment_dominant, mutual_coupling_dominant };
std::string to_string(SyncBranch b);

/// cooperative when n_h2 <= n_c (no population inversion: entrainment and
/// mutual coupling pull the phases the same way); otherwise
/// entrainment_dominant for k > 2 and mutual_coupling_dominant for k <= 2.
SyncBranch classify_branch(const MaserParams& prm);

/// Relative-phase quasi-distribution value
///   S(phi21, phi31) = [ Re(rho12 e^{i phi21}) + Re(rho13 e^{i phi31})
///                       + Re(rho23 e^{i (phi21 - phi31)}) ] / (16 pi^2).
/// Phase convention: each coherence contributes Re(rho_ij e^{+i phi_ij}) with
/// phi23 == phi21 - phi31. The maximum value is convention-independent; the
/// maximizing phases are reported in [-pi, pi] under this convention.
double phase_quasi_distribution(const Matrix4& rho, double phi21, double phi31);

/// Uniform grid over (-pi, pi]: phi[m] = -pi + 2 pi (m+1)/n.
/// S(i, j) = S(phi[i], phi[j]) with the first index running over phi21.
/// The grid mean of S vanishes (enforced to <= 1e-12 * max |S|).
struct PhaseGrid {
  int n;
  std::vector<double> phi;
  Eigen::MatrixXd S;
};

/// grid_size >= 16 (PreconditionViolated otherwise).
PhaseGrid phase_distribution(const Matrix4& rho, int grid_size);

/// CSV export: header "phi21,phi31,S", rows in row-major order (phi21 outer),
/// numbers with 12 significant digits.
void write_phase_distribution_csv(const PhaseGrid& grid, std::ostream& out);

/// Closed-form maximum of S, valid at delta == 0 with the drive on resonance:
///   cooperative:              (|rho12| + |rho13| + |rho23|) / (16 pi^2)
///   entrainment (k > 2):      (|rho12| + |rho13| - |rho23|) / (16 pi^2)
///   mutual coupling (k <= 2): (1 + k^2/2) |rho23| / (16 pi^2)
/// Throws PreconditionViolated outside its domain.
double smax_closed_form(const MaserParams& prm, const Matrix4& rho);

struct SmaxNumeric {
  double value;
  /// (phi21, phi31) in [-pi, pi]; (-pi, -pi) when all coherences vanish.
  std::array<double, 2> argmax;
};

/// Global maximum of S: coarse scan on an n x n grid phi_m = -pi + 2 pi m/n
/// (m = 0..n-1; ties resolve to the smallest phi21, then smallest phi31),
/// followed by damped-Newton refinement to gradient norm
/// <= 1e-10 * (|rho12| + |rho13| + |rho23|).
SmaxNumeric smax_numeric(const Matrix4& rho, int scan_grid = 256);

struct SyncResult {
  double k;
  /// Present when the closed form applies (delta == 0, resonant drive).
  std::optional<double> s_max_closed;
  double s_max_numeric;
  std::array<double, 2> argmax_phases;
  SyncBranch branch;
};

/// Computes k, branch, the numeric maximum, and (when valid) the closed form;
/// enforces |closed - numeric| <= 1e-6 * max(closed, 1e-300) and throws
/// NonPhysical when they disagree. Throws DivisionByZero when
/// lambda_drive == 0.
SyncResult analyze_synchronization(const MaserParams& prm, const Matrix4& rho);

}  // namespace maser
