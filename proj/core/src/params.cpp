#include "maser/params.hpp"

#include <cmath>
#include <sstream>

#include "maser/errors.hpp"

namespace maser {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw PreconditionViolated(message);
}

}  // namespace

bool MaserParams::drive_is_resonant(double rel_tol) const {
  const double mid = omega2 - omega1 + 0.5 * delta;
  return std::abs(drive_frequency() - mid) <= rel_tol * omega1;
}

void MaserParams::validate() const {
  const double values[] = {omega1, omega2,  delta, lambda_drive,
                           gamma_h, gamma_c, n_c,   n_h2,
                           p,       drive_frequency()};
  for (double v : values) {
    require(std::isfinite(v), "all parameters must be finite");
  }
  require(omega1 > 0.0, "omega1 must be positive");
  require(omega2 > omega1, "omega2 must exceed omega1");
  require(delta >= 0.0, "delta must be non-negative");
  require(lambda_drive >= 0.0, "lambda_drive must be non-negative");
  require(gamma_h > 0.0, "gamma_h must be positive");
  require(gamma_c > 0.0, "gamma_c must be positive");
  require(n_c >= 0.0, "n_c must be non-negative");
  require(n_h2 >= 0.0, "n_h2 must be non-negative");
  require(p >= -1.0 && p <= 1.0, "p must lie in [-1, 1]");
  require(drive_frequency() > 0.0, "drive frequency must be positive");
}

BathOccupations derive_bath_occupations(const MaserParams& prm) {
  BathOccupations occ{};
  occ.T_c = prm.n_c > 0.0 ? prm.omega1 / std::log1p(1.0 / prm.n_c) : 0.0;
  if (prm.n_h2 > 0.0) {
    const double beta_omega2 = std::log1p(1.0 / prm.n_h2);  // omega2 / T_h
    occ.T_h = prm.omega2 / beta_omega2;
    occ.n_h3 = 1.0 / std::expm1(beta_omega2 * prm.omega3() / prm.omega2);
  } else {
    occ.T_h = 0.0;
    occ.n_h3 = 0.0;
  }
  return occ;
}

}  // namespace maser
