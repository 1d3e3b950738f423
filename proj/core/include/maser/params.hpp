#pragma once

#include <optional>

namespace maser {

/// Parameters of the driven four-level machine.
///
/// Level energies are (0, omega1, omega2, omega3 = omega2 + delta). The cold
/// bath couples the 0<->1 transition; the hot bath couples 0<->2 and 0<->3
/// with a cross-transition correlation coefficient p in [-1, 1]; a classical
/// drive of strength lambda_drive and frequency drive_frequency() couples
/// 1<->2 and 1<->3. omega1 sets the unit of energy (and of inverse time).
struct MaserParams {
  double omega1 = 1.0;
  double omega2 = 3.0;
  /// Near-degenerate splitting omega3 - omega2 (>= 0).
  double delta = 0.0;
  /// Drive frequency; empty selects the resonant midpoint
  /// omega2 - omega1 + delta/2 of the two driven gaps.
  std::optional<double> omega_drive{};
  double lambda_drive = 0.05;
  double gamma_h = 0.1;
  double gamma_c = 0.1;
  /// Cold-bath occupation at omega1.
  double n_c = 0.1;
  /// Hot-bath occupation at omega2 (the occupation at omega3 follows from the
  /// implied temperature; see derive_bath_occupations).
  double n_h2 = 0.5;
  /// Hot-bath cross-transition correlation, -1 <= p <= 1.
  double p = 0.5;

  double omega3() const { return omega2 + delta; }

  /// Actual drive frequency (resolves the resonant-midpoint default).
  double drive_frequency() const {
    return omega_drive ? *omega_drive : omega2 - omega1 + 0.5 * delta;
  }

  /// True when the drive sits at the resonant midpoint within rel_tol*omega1.
  bool drive_is_resonant(double rel_tol = 1e-12) const;

  /// Throws PreconditionViolated unless all parameter invariants hold:
  /// omega2 > omega1 > 0, delta >= 0, lambda_drive >= 0, gamma_h > 0,
  /// gamma_c > 0, n_c >= 0, n_h2 >= 0, -1 <= p <= 1, drive_frequency() > 0,
  /// and every value finite.
  void validate() const;
};

/// Occupations and temperatures implied by (n_h2, n_c): the hot-bath
/// temperature is fixed by its occupation at omega2 and then evaluated at
/// omega3 for the second hot transition. n == 0 maps to T == 0 (and
/// n_h3 == 0).
struct BathOccupations {
  double n_h3;
  double T_h;
  double T_c;
};

BathOccupations derive_bath_occupations(const MaserParams& prm);

}  // namespace maser
