#pragma once

#include <optional>
#include <string>

#include "maser/density_matrix.hpp"
#include "maser/params.hpp"

namespace maser {

/// Steady-state energy currents. Sign convention: heat currents are positive
/// when energy flows from the bath into the machine; power is negative when
/// the machine delivers work to the drive. The first law then reads
/// power + q_hot + q_cold == 0.
struct ThermoCurrents {
  double power;
  double q_hot_inc;
  double q_hot_coh;
  double q_cold;

  double q_hot() const { return q_hot_inc + q_hot_coh; }
  double first_law_residual() const { return power + q_hot() + q_cold; }
  /// Characteristic current magnitude for relative tolerances.
  double scale() const;
};

/// Currents evaluated on a (stationary) state:
///   power     = 2 lambda sum_j (omega_j - omega1) Im rho_1j           (j = 2, 3)
///   q_hot_inc = 2 gamma_h sum_j omega_j [ n_h^(j) rho00 - (1 + n_h^(j)) rho_jj ]
///   q_hot_coh = -2 gamma_h [ (1 + n_h2) omega3 + (1 + n_h3) omega2 ] p Re rho23
///   q_cold    = 2 omega1 gamma_c [ n_c rho00 - (1 + n_c) rho11 ]
ThermoCurrents steady_currents(const MaserParams& prm, const Matrix4& rho);

enum class Bath { hot, cold };

/// Definitional energy flux tr(D_bath[rho] H0) with H0 the bare Hamiltonian;
/// equals the corresponding current of steady_currents exactly (q_hot_inc +
/// q_hot_coh for the hot bath).
double bath_energy_flux(const MaserParams& prm, const Matrix4& rho, Bath bath);

enum class Regime { engine, refrigerator, other };
std::string to_string(Regime r);

/// Signs with |x| <= 1e-14 treated as zero:
///   engine:       q_hot > 0, q_cold < 0, power < 0
///   refrigerator: q_hot < 0, q_cold > 0, power > 0
Regime classify_regime(const ThermoCurrents& c);

struct EfficiencyReport {
  /// -power / q_hot; present in the engine regime only.
  std::optional<double> eta;
  /// q_cold / power; present in the refrigerator regime only.
  std::optional<double> chi;
  /// 1 - T_c / T_h from the bath occupations; NaN when T_h == 0 (n_h2 == 0),
  /// 1 when T_c == 0 (n_c == 0).
  double eta_carnot;
};

EfficiencyReport efficiency_and_cop(const MaserParams& prm, const ThermoCurrents& c);

/// Strict accessors: throw RegimeMismatch outside the respective regime.
double engine_efficiency(const ThermoCurrents& c);
double refrigerator_cop(const ThermoCurrents& c);

/// Closed-form steady-state currents, valid at delta == 0 with the drive on
/// resonance and |p| < 1 (PreconditionViolated otherwise). Matches
/// steady_currents evaluated on analytic_steady_state to 1e-10 * scale.
ThermoCurrents analytic_currents(const MaserParams& prm);

}  // namespace maser
