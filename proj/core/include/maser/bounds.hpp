#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maser/params.hpp"
#include "maser/steady_state.hpp"
#include "maser/thermodynamics.hpp"

namespace maser {

/// Conversion factor of the power bound: kappa = 32 pi^2 lambda (omega3 - omega1).
double kappa_factor(const MaserParams& prm);

/// Conversion factor of the coherent-heat bound:
/// alpha = (8 pi)^2 gamma_h omega3 (1 + n_h2) |p|.
double alpha_factor(const MaserParams& prm);

/// |power| / (kappa * s_max). The bound asserts this is <= 1 in the
/// refrigerator regime. Throws DegenerateSync when s_max <= 1e-14, i.e. when
/// the phase distribution is flat up to solver roundoff and the ratio would
/// be meaningless (the condition is reported, not mapped to a sentinel).
double power_sync_ratio(const MaserParams& prm, const ThermoCurrents& c, double s_max);

/// |q_hot_coh| / (alpha * s_max); <= 1 asserted in both regimes.
/// Throws UndefinedForZeroP when p == 0 and DegenerateSync as above.
double coherent_heat_sync_ratio(const MaserParams& prm, const ThermoCurrents& c, double s_max);

/// Synchronization-limited efficiency eta_S = kappa s_max / (q_hot_inc + alpha s_max);
/// engine regime only (RegimeMismatch otherwise, DegenerateSync as above).
double efficiency_sync_bound(const MaserParams& prm, const ThermoCurrents& c, double s_max);

/// Synchronization-limited COP chi_S = q_cold / (kappa s_max); refrigerator
/// regime only (RegimeMismatch otherwise, DegenerateSync as above).
double cop_sync_bound(const MaserParams& prm, const ThermoCurrents& c, double s_max);

/// Every bound evaluated on one steady state. Ratios compare a quantity to
/// its synchronization bound; a value <= 1 (+1e-9 tolerance) means the bound
/// is satisfied. Fields are absent when undefined at this point (wrong
/// regime, p == 0, flat distribution, lambda == 0 for k); each absence is
/// recorded in flags.
struct BoundReport {
  std::optional<double> k;
  Regime regime;
  ThermoCurrents currents;
  double s_max;
  double residual;
  SolveMethod method;

  std::optional<double> ratio_ps;   // |P| / (kappa S)
  std::optional<double> ratio_qs;   // |Q_coh| / (alpha S)
  std::optional<double> eta;        // engine efficiency
  std::optional<double> eta_s;      // synchronization-limited efficiency
  std::optional<double> ratio_es;   // eta_s / eta
  std::optional<double> chi;        // refrigerator COP
  std::optional<double> chi_s;      // synchronization-limited COP
  std::optional<double> ratio_cop;  // chi_s / chi

  std::vector<std::string> flags;
};

/// Evaluates currents, the numeric s_max, and every applicable bound on a
/// solved steady state, converting domain errors (DegenerateSync,
/// UndefinedForZeroP, RegimeMismatch, DivisionByZero) into absent fields plus
/// flags. Never throws for those conditions.
BoundReport assemble_bound_report(const MaserParams& prm, const SteadyStateSolution& sol);

/// Tally of one bound in one regime across a data set.
struct BoundTally {
  int points = 0;
  int violations = 0;  // ratio > 1 + 1e-9
  bool present() const { return points > 0; }
  bool satisfied() const { return points > 0 && violations == 0; }
};

struct SummaryTable {
  BoundTally ps_engine, ps_refrigerator;
  BoundTally qs_engine, qs_refrigerator;
  BoundTally es_engine;
  BoundTally cop_refrigerator;
  /// Fixed-width text table; satisfied bounds marked with a check, violated
  /// ones with a cross, inapplicable cells with a dash.
  std::string render() const;
};

/// Aggregates the per-point reports. Throws InsufficientData when no report
/// carries any computable ratio.
SummaryTable summarize_bounds(const std::vector<BoundReport>& reports);

}  // namespace maser
