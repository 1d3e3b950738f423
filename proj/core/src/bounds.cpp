#include "maser/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "maser/errors.hpp"
#include "maser/synchronization.hpp"

namespace maser {

namespace {

constexpr double kPi = std::numbers::pi;
// Any density matrix keeps s_max below 3/(32 pi^2) ~ 1e-2, and working points
// of interest sit around 1e-5..1e-3, while numeric steady-state solvers leave
// pure-roundoff coherences around 1e-19 (e.g. an undriven machine). A maximum
// at or below this floor is therefore a flat phase distribution, and dividing
// by it would produce meaningless ratios.
constexpr double kSmaxFloor = 1e-14;
constexpr double kSatisfactionTol = 1.0 + 1e-9;

void require_sync(double s_max) {
  if (s_max <= kSmaxFloor) {
    throw DegenerateSync(
        "phase distribution is flat (s_max ~ 0); synchronization-normalized "
        "ratio diverges to +inf");
  }
}

}  // namespace

double kappa_factor(const MaserParams& prm) {
  return 32.0 * kPi * kPi * prm.lambda_drive * (prm.omega3() - prm.omega1);
}

double alpha_factor(const MaserParams& prm) {
  return (8.0 * kPi) * (8.0 * kPi) * prm.gamma_h * prm.omega3() *
         (1.0 + prm.n_h2) * std::abs(prm.p);
}

double power_sync_ratio(const MaserParams& prm, const ThermoCurrents& c,
                        double s_max) {
  require_sync(s_max);
  return std::abs(c.power) / (kappa_factor(prm) * s_max);
}

double coherent_heat_sync_ratio(const MaserParams& prm, const ThermoCurrents& c,
                                double s_max) {
  if (prm.p == 0.0)
    throw UndefinedForZeroP(
        "coherent-heat bound is undefined at p == 0 (conversion factor and "
        "coherent current both vanish)");
  require_sync(s_max);
  return std::abs(c.q_hot_coh) / (alpha_factor(prm) * s_max);
}

double efficiency_sync_bound(const MaserParams& prm, const ThermoCurrents& c,
                             double s_max) {
  if (classify_regime(c) != Regime::engine)
    throw RegimeMismatch(
        "synchronization-limited efficiency applies to the engine regime only");
  require_sync(s_max);
  return kappa_factor(prm) * s_max / (c.q_hot_inc + alpha_factor(prm) * s_max);
}

double cop_sync_bound(const MaserParams& prm, const ThermoCurrents& c,
                      double s_max) {
  if (classify_regime(c) != Regime::refrigerator)
    throw RegimeMismatch(
        "synchronization-limited COP applies to the refrigerator regime only");
  require_sync(s_max);
  return c.q_cold / (kappa_factor(prm) * s_max);
}

BoundReport assemble_bound_report(const MaserParams& prm,
                                  const SteadyStateSolution& sol) {
  BoundReport rep{};
  rep.currents = steady_currents(prm, sol.rho);
  rep.regime = classify_regime(rep.currents);
  rep.residual = sol.residual;
  rep.method = sol.method;

  const SmaxNumeric smax = smax_numeric(sol.rho);
  rep.s_max = smax.value;

  try {
    rep.k = coupling_ratio(prm);
  } catch (const DivisionByZero&) {
    rep.flags.push_back("k-undefined-zero-drive");
  }

  try {
    rep.ratio_ps = power_sync_ratio(prm, rep.currents, rep.s_max);
  } catch (const DegenerateSync&) {
    rep.flags.push_back("degenerate-sync:ratio_ps");
  }

  try {
    rep.ratio_qs = coherent_heat_sync_ratio(prm, rep.currents, rep.s_max);
  } catch (const UndefinedForZeroP&) {
    rep.flags.push_back("undefined-for-zero-p:ratio_qs");
  } catch (const DegenerateSync&) {
    rep.flags.push_back("degenerate-sync:ratio_qs");
  }

  const EfficiencyReport eff = efficiency_and_cop(prm, rep.currents);
  rep.eta = eff.eta;
  rep.chi = eff.chi;

  try {
    rep.eta_s = efficiency_sync_bound(prm, rep.currents, rep.s_max);
    if (rep.eta && *rep.eta != 0.0) rep.ratio_es = *rep.eta_s / *rep.eta;
  } catch (const RegimeMismatch&) {
    rep.flags.push_back("regime-mismatch:eta_s");
  } catch (const DegenerateSync&) {
    rep.flags.push_back("degenerate-sync:eta_s");
  }

  try {
    rep.chi_s = cop_sync_bound(prm, rep.currents, rep.s_max);
    if (rep.chi && *rep.chi != 0.0) rep.ratio_cop = *rep.chi_s / *rep.chi;
  } catch (const RegimeMismatch&) {
    rep.flags.push_back("regime-mismatch:chi_s");
  } catch (const DegenerateSync&) {
    rep.flags.push_back("degenerate-sync:chi_s");
  }

  return rep;
}

namespace {

void tally(BoundTally& t, const std::optional<double>& ratio) {
  if (!ratio) return;
  ++t.points;
  if (*ratio > kSatisfactionTol) ++t.violations;
}

std::string cell(const BoundTally& t) {
  if (!t.present()) return "-";
  std::ostringstream out;
  if (t.satisfied()) {
    out << "ok (" << t.points << " points)";
  } else {
    out << "VIOLATED (" << t.violations << "/" << t.points << " points)";
  }
  return out.str();
}

}  // namespace

std::string SummaryTable::render() const {
  std::ostringstream out;
  auto row = [&out](const char* name, const std::string& engine,
                    const std::string& refrigerator) {
    out << name;
    for (size_t i = std::string(name).size(); i < 20; ++i) out << ' ';
    out << engine;
    for (size_t i = engine.size(); i < 26; ++i) out << ' ';
    out << refrigerator << '\n';
  };
  row("bound", "engine", "refrigerator");
  row("power-sync", cell(ps_engine), cell(ps_refrigerator));
  row("coherent-heat-sync", cell(qs_engine), cell(qs_refrigerator));
  row("efficiency-sync", cell(es_engine), "-");
  row("cop-sync", "-", cell(cop_refrigerator));
  return out.str();
}

SummaryTable summarize_bounds(const std::vector<BoundReport>& reports) {
  SummaryTable table{};
  for (const BoundReport& rep : reports) {
    if (rep.regime == Regime::engine) {
      tally(table.ps_engine, rep.ratio_ps);
      tally(table.qs_engine, rep.ratio_qs);
      tally(table.es_engine, rep.ratio_es);
    } else if (rep.regime == Regime::refrigerator) {
      tally(table.ps_refrigerator, rep.ratio_ps);
      tally(table.qs_refrigerator, rep.ratio_qs);
      tally(table.cop_refrigerator, rep.ratio_cop);
    }
  }
  const bool any = table.ps_engine.present() || table.ps_refrigerator.present() ||
                   table.qs_engine.present() || table.qs_refrigerator.present() ||
                   table.es_engine.present() || table.cop_refrigerator.present();
  if (!any) {
    throw InsufficientData(
        "no report carries a computable bound ratio in the engine or "
        "refrigerator regime");
  }
  return table;
}

}  // namespace maser
