#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "maser/bounds.hpp"
#include "maser/params.hpp"
#include "maser/steady_state.hpp"

namespace maser {

enum class SweepAxis { nh2_over_nc, p, delta, lambda };
std::string to_string(SweepAxis a);

struct SweepConfig {
  MaserParams base;
  SweepAxis axis;
  double from;
  double to;
  int points;  // >= 2
  SolverChoice solver = SolverChoice::automatic;
};

/// Inclusive linear grid from..to with config.points entries (from < to).
std::vector<double> sweep_values(const SweepConfig& config);

/// Base parameters with the axis value applied:
///   nh2_over_nc: n_h2 = value * n_c (requires base.n_c > 0)
///   p / delta / lambda: the corresponding field replaced.
MaserParams apply_axis(const SweepConfig& config, double value);

struct SweepRow {
  double value;
  /// Absent when this row failed; the failure is recorded in error.
  std::optional<BoundReport> report;
  std::string error;  // empty on success
};

/// Solves every grid point serially (deterministic; reruns are bit-identical)
/// and captures per-row domain errors in SweepRow::error instead of aborting
/// the sweep. Throws ConfigError for invalid configs (from >= to, points < 2,
/// analytic solver requested off its domain, nh2_over_nc with n_c == 0).
std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// CSV with fixed column order:
///   <axis>,k,P,Qh_inc,Qh_coh,Qc,Smax,ratio_ps,ratio_qs,eta,eta_S,chi,chi_S,
///   regime,residual,error
/// Numbers use 12 significant digits; absent values print NA; error is empty
/// on success.
void write_sweep_csv(const std::vector<SweepRow>& rows, const SweepConfig& config,
                     std::ostream& out);

/// JSON array of objects with the same field names as the CSV columns
/// (absent values are null).
void write_sweep_json(const std::vector<SweepRow>& rows, const SweepConfig& config,
                      std::ostream& out);

/// Parses a parameter set from JSON text. Keys mirror MaserParams fields;
/// "Omega" (alias "omega_drive") accepts a number or the string
/// "resonant_mid"; "lambda" is accepted as an alias for "lambda_drive".
/// Unknown keys throw ConfigError.
MaserParams parse_params_text(const std::string& json_text);

/// Parses {"base": {...}, "sweep_axis": "...", "from": .., "to": ..,
/// "points": .., "solver": "auto"|"analytic"|"nullspace"|"evolve"} from JSON
/// text. Throws ConfigError on schema violations.
SweepConfig parse_sweep_config_text(const std::string& json_text);

/// 12-significant-digit number formatting shared by every CSV/JSON emitter.
std::string format_number(double v);

}  // namespace maser
