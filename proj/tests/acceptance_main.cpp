// Acceptance gate: one self-contained check per shipped guarantee, each
// printing a single PASS/FAIL line. The binary exits nonzero when any check
// fails, so it doubles as a ctest entry.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "maser/bounds.hpp"
#include "maser/errors.hpp"
#include "maser/model.hpp"
#include "maser/ode.hpp"
#include "maser/params.hpp"
#include "maser/steady_state.hpp"
#include "maser/sweep.hpp"
#include "maser/synchronization.hpp"
#include "maser/thermodynamics.hpp"
#include "test_helpers.hpp"

namespace {

using namespace maser;
using testutil::base_params;

constexpr double kPi = 3.14159265358979323846;

const std::vector<double> kGridR = {0.2, 0.5, 2.0, 5.0};
const std::vector<double> kGridP = {-0.99, -0.5, 0.0, 0.5, 0.9};

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      detail = msg;
    }
  }
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double diff(const Matrix4& a, const Matrix4& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

double wrap(double a) { return std::remainder(a, 2.0 * kPi); }

/// 01 — the dimensionless coupling ratio at the four reference points.
Check criterion_01() {
  Check c;
  const struct {
    double n_h2, p, k;
  } table[] = {{0.5, 0.5, 4.5},
               {0.5, -0.99, 0.03},
               {0.05, 0.5, 3.15},
               {0.05, -0.99, 0.021}};
  for (const auto& row : table) {
    const double k = coupling_ratio(base_params(0.05, row.n_h2, row.p));
    c.require(std::abs(k - row.k) <= 1e-12,
              "k(" + num(row.n_h2) + "," + num(row.p) + ") = " + num(k) +
                  ", expected " + num(row.k));
  }
  return c;
}

/// 02 — analytic, null-space, and long-time-evolution solvers agree pairwise
/// to 1e-8 on the 4 x 5 working-point grid at zero splitting.
Check criterion_02() {
  Check c;
  for (double r : kGridR) {
    for (double p : kGridP) {
      const MaserParams prm = base_params(0.0, r * 0.1, p);
      const Matrix4 a = analytic_steady_state(prm).rho;
      const Matrix4 n = numeric_steady_state(prm).rho;
      EvolveOptions opts{};
      opts.tol = 1e-11;
      opts.t_final = 2000.0;
      const Matrix4 e = evolve_to_steady_state(prm, opts).rho;
      const double worst = std::max({diff(a, n), diff(a, e), diff(n, e)});
      c.require(worst <= 1e-8, "solver disagreement " + num(worst) + " at r=" +
                                   num(r) + " p=" + num(p));
    }
  }
  return c;
}

/// 03 — structural identities of the zero-splitting steady state.
Check criterion_03() {
  Check c;
  for (double r : kGridR) {
    for (double p : kGridP) {
      const MaserParams prm = base_params(0.0, r * 0.1, p);
      const Matrix4 rho = numeric_steady_state(prm).rho;
      const std::string at = " at r=" + num(r) + " p=" + num(p);
      const double cs = std::max(
          {std::abs(rho(1, 2)), std::abs(rho(1, 3)), std::abs(rho(2, 3)),
           1e-300});
      c.require(std::abs(rho(1, 3) - rho(1, 2)) <= 1e-8 * cs,
                "rho13 != rho12" + at);
      c.require(std::abs(rho(3, 3) - rho(2, 2)) <= 1e-8, "rho33 != rho22" + at);
      for (int j = 1; j < 4; ++j)
        c.require(std::abs(rho(0, j)) <= 1e-10, "level-0 coherence" + at);
      c.require(std::abs(rho(1, 2).real()) <= 1e-8 * cs,
                "rho12 not purely imaginary" + at);
      c.require(std::abs(rho(2, 3).imag()) <= 1e-8 * cs,
                "rho23 not purely real" + at);
      const double k = coupling_ratio(prm);
      c.require(std::abs(rho(1, 2) - Complex(0, 1) * k * rho(2, 3)) <= 1e-8 * cs,
                "rho12 != i k rho23" + at);
      c.require(std::abs(rho.trace().real() - 1.0) <= 1e-12, "trace" + at);
    }
  }
  return c;
}

/// 04 — first law and the definitional bath-flux identity.
Check criterion_04() {
  Check c;
  std::vector<MaserParams> points;
  for (double r : kGridR)
    for (double p : kGridP) points.push_back(base_params(0.0, r * 0.1, p));
  points.push_back(base_params(0.05));
  points.push_back(base_params(0.2));
  for (const MaserParams& prm : points) {
    const Matrix4 rho = numeric_steady_state(prm).rho;
    const ThermoCurrents cur = steady_currents(prm, rho);
    const double scale = std::max(cur.scale(), 1e-300);
    c.require(std::abs(cur.first_law_residual()) <= 1e-10 * scale,
              "first law residual " + num(cur.first_law_residual()) +
                  " at delta=" + num(prm.delta) + " n_h2=" + num(prm.n_h2) +
                  " p=" + num(prm.p));
    c.require(std::abs(bath_energy_flux(prm, rho, Bath::hot) - cur.q_hot()) <=
                  1e-12 * scale,
              "hot flux identity at n_h2=" + num(prm.n_h2));
    c.require(std::abs(bath_energy_flux(prm, rho, Bath::cold) - cur.q_cold) <=
                  1e-12 * scale,
              "cold flux identity at n_h2=" + num(prm.n_h2));
  }
  return c;
}

/// 05 — zero-splitting efficiency 2/3 (engine) and COP 1/2 (refrigerator),
/// Carnot-bounded, with the coherent hot current locked to p times the
/// incoherent one.
Check criterion_05() {
  Check c;
  double eta_min = 1.0, eta_max = 0.0;
  for (double r : kGridR) {
    for (double p : kGridP) {
      const MaserParams prm = base_params(0.0, r * 0.1, p);
      const ThermoCurrents cur =
          steady_currents(prm, analytic_steady_state(prm).rho);
      const std::string at = " at r=" + num(r) + " p=" + num(p);
      c.require(std::abs(cur.q_hot_coh - prm.p * cur.q_hot_inc) <=
                    1e-10 * std::max(std::abs(cur.q_hot_inc), 1e-300),
                "coherent share != p" + at);
      const Regime regime = classify_regime(cur);
      const EfficiencyReport rep = efficiency_and_cop(prm, cur);
      if (r > 1.0) {
        c.require(regime == Regime::engine, "expected engine" + at);
        if (regime != Regime::engine) continue;
        c.require(std::abs(*rep.eta - 2.0 / 3.0) <= 1e-10,
                  "eta = " + num(*rep.eta) + at);
        c.require(*rep.eta <= rep.eta_carnot + 1e-12, "eta above Carnot" + at);
        eta_min = std::min(eta_min, *rep.eta);
        eta_max = std::max(eta_max, *rep.eta);
      } else {
        c.require(regime == Regime::refrigerator,
                  "expected refrigerator" + at);
        if (regime != Regime::refrigerator) continue;
        c.require(std::abs(*rep.chi - 0.5) <= 1e-10,
                  "chi = " + num(*rep.chi) + at);
      }
    }
  }
  c.require(eta_max - eta_min <= 1e-10,
            "engine efficiency spread " + num(eta_max - eta_min));
  return c;
}

/// 06 — closed-form synchronization maximum against the numeric scan, with
/// all three branch formulas exercised.
Check criterion_06() {
  Check c;
  std::set<SyncBranch> seen;
  for (double r : kGridR) {
    for (double p : kGridP) {
      const MaserParams prm = base_params(0.0, r * 0.1, p);
      const SyncResult res =
          analyze_synchronization(prm, numeric_steady_state(prm).rho);
      const std::string at = " at r=" + num(r) + " p=" + num(p);
      c.require(res.s_max_closed.has_value(), "closed form missing" + at);
      if (!res.s_max_closed) continue;
      c.require(std::abs(*res.s_max_closed - res.s_max_numeric) <=
                    1e-6 * std::max(*res.s_max_closed, 1e-300),
                "closed/numeric mismatch" + at);
      seen.insert(res.branch);
    }
  }
  c.require(seen.size() == 3, "only " + num(double(seen.size())) +
                                  " of 3 branch formulas exercised");
  return c;
}

/// 07 — the power-to-synchronization ratio pattern across the inversion sweep
/// at two splittings.
Check criterion_07() {
  Check c;
  const double rs[] = {0.2, 0.5, 0.8, 2.0, 3.0, 5.0};
  const double frozen_005[] = {0.864544, 0.867355, 0.870827,
                               1.076735, 1.073987, 1.067737};
  const double frozen_020[] = {0.920885, 0.923729, 0.934587,
                               0.767818, 0.781233, 0.800411};
  for (int d = 0; d < 2; ++d) {
    const double delta = d == 0 ? 0.05 : 0.2;
    const double* frozen = d == 0 ? frozen_005 : frozen_020;
    for (int i = 0; i < 6; ++i) {
      const MaserParams prm = base_params(delta, rs[i] * 0.1, 0.5);
      const BoundReport rep =
          assemble_bound_report(prm, numeric_steady_state(prm));
      const std::string at =
          " at delta=" + num(delta) + " r=" + num(rs[i]);
      c.require(rep.ratio_ps.has_value(), "ratio_ps missing" + at);
      if (!rep.ratio_ps) continue;
      c.require(std::abs(*rep.ratio_ps - frozen[i]) <= 2e-6,
                "ratio_ps = " + num(*rep.ratio_ps) + ", expected " +
                    num(frozen[i]) + at);
      const bool fridge_side = rs[i] < 1.0;
      c.require(rep.regime ==
                    (fridge_side ? Regime::refrigerator : Regime::engine),
                "unexpected regime" + at);
      if (fridge_side) {
        c.require(*rep.ratio_ps < 1.0, "refrigerator bound violated" + at);
      } else if (d == 0) {
        // Near degeneracy the synchronization measure lower-bounds the
        // delivered power: the engine-side ratio exceeds one.
        c.require(*rep.ratio_ps > 1.0, "engine ratio not above 1" + at);
      } else {
        c.require(*rep.ratio_ps < 1.0,
                  "engine ratio above 1 at large splitting" + at);
      }
    }
  }
  return c;
}

SweepConfig make_sweep(const MaserParams& base, SweepAxis axis, double from,
                       double to, int points) {
  SweepConfig cfg{};
  cfg.base = base;
  cfg.axis = axis;
  cfg.from = from;
  cfg.to = to;
  cfg.points = points;
  return cfg;
}

/// 08 — the coherent-heat ratio stays below one on inversion and correlation
/// sweeps and is largest toward p -> -1.
Check criterion_08() {
  Check c;
  const double frozen_max[] = {0.142994, 0.952500};
  const double ps[] = {0.5, -0.99};
  for (int i = 0; i < 2; ++i) {
    const auto rows = run_sweep(make_sweep(base_params(0.05, 0.5, ps[i]),
                                           SweepAxis::nh2_over_nc, 0.2, 5.0,
                                           21));
    double max_ratio = 0.0;
    for (const SweepRow& row : rows) {
      const std::string at =
          " at r=" + num(row.value) + " p=" + num(ps[i]);
      c.require(row.report.has_value() && row.report->ratio_qs.has_value(),
                "ratio_qs missing" + at);
      if (!row.report || !row.report->ratio_qs) continue;
      c.require(*row.report->ratio_qs <= 1.0 + 1e-9, "bound violated" + at);
      max_ratio = std::max(max_ratio, *row.report->ratio_qs);
    }
    c.require(std::abs(max_ratio - frozen_max[i]) <= 2e-6,
              "sweep max " + num(max_ratio) + ", expected " +
                  num(frozen_max[i]));
  }
  for (double n_h2 : {0.5, 0.05}) {
    const auto rows = run_sweep(make_sweep(base_params(0.05, n_h2, 0.5),
                                           SweepAxis::p, -0.99, 0.99, 21));
    double best = -1.0;
    size_t best_index = 0, present = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
      const SweepRow& row = rows[i];
      c.require(row.report.has_value(),
                "row failed at p=" + num(row.value));
      if (!row.report) continue;
      if (!row.report->ratio_qs) {
        // Only the p = 0 point may lack the ratio (the bound degenerates
        // there).
        c.require(std::abs(row.value) <= 1e-12,
                  "ratio_qs missing at p=" + num(row.value));
        continue;
      }
      ++present;
      c.require(*row.report->ratio_qs <= 1.0 + 1e-9,
                "bound violated at p=" + num(row.value));
      if (*row.report->ratio_qs > best) {
        best = *row.report->ratio_qs;
        best_index = i;
      }
    }
    c.require(present >= 20, "too few defined ratios on the p sweep");
    c.require(best_index == 0, "maximum not at p=-0.99 (n_h2=" + num(n_h2) +
                                   ", found index " +
                                   num(double(best_index)) + ")");
  }
  return c;
}

/// 09 — efficiency and COP never exceed their synchronization-limited values
/// on their sweep domains, with the frozen spot values and trends.
Check criterion_09() {
  Check c;
  // Engine side: ratio_es = eta_S / eta at n_h2/n_c = 2.
  const double es_ps[] = {-0.5, -0.02, 0.02, 0.5};
  const double es_frozen[2][4] = {{0.214763, 0.788719, 0.820736, 0.318092},
                                  {0.237763, 0.887790, 0.917063, 0.319822}};
  for (int d = 0; d < 2; ++d) {
    const double delta = d == 0 ? 0.05 : 0.1;
    double es[4] = {0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
      const MaserParams prm = base_params(delta, 0.2, es_ps[i]);
      const BoundReport rep =
          assemble_bound_report(prm, numeric_steady_state(prm));
      const std::string at = " at delta=" + num(delta) + " p=" + num(es_ps[i]);
      c.require(rep.ratio_es.has_value(), "ratio_es missing" + at);
      if (!rep.ratio_es) continue;
      es[i] = *rep.ratio_es;
      c.require(std::abs(es[i] - es_frozen[d][i]) <= 2e-6,
                "ratio_es = " + num(es[i]) + ", expected " +
                    num(es_frozen[d][i]) + at);
    }
    // The bound tightens as the correlation is switched off.
    c.require(es[1] > es[0] && es[2] > es[3],
              "ratio_es trend broken at delta=" + num(delta));

    const auto rows = run_sweep(make_sweep(base_params(delta, 0.2, 0.5),
                                           SweepAxis::p, -0.99, 0.99, 21));
    for (const SweepRow& row : rows) {
      const std::string at =
          " at delta=" + num(delta) + " p=" + num(row.value);
      c.require(row.report.has_value() && row.report->ratio_es.has_value(),
                "ratio_es missing on sweep" + at);
      if (row.report && row.report->ratio_es)
        c.require(*row.report->ratio_es <= 1.0 + 1e-9,
                  "efficiency bound violated" + at);
    }
  }
  // Refrigerator side: ratio_cop = chi_S / chi at n_h2/n_c = 0.5.
  const double cop_frozen[2][2] = {{0.867355, 0.932440}, {0.894137, 0.988532}};
  for (int d = 0; d < 2; ++d) {
    const double delta = d == 0 ? 0.05 : 0.1;
    double cop[2] = {0, 0};
    const double cop_ps[] = {0.5, 0.9};
    for (int i = 0; i < 2; ++i) {
      const MaserParams prm = base_params(delta, 0.05, cop_ps[i]);
      const BoundReport rep =
          assemble_bound_report(prm, numeric_steady_state(prm));
      const std::string at = " at delta=" + num(delta) + " p=" + num(cop_ps[i]);
      c.require(rep.ratio_cop.has_value(), "ratio_cop missing" + at);
      if (!rep.ratio_cop) continue;
      cop[i] = *rep.ratio_cop;
      c.require(std::abs(cop[i] - cop_frozen[d][i]) <= 2e-6,
                "ratio_cop = " + num(cop[i]) + ", expected " +
                    num(cop_frozen[d][i]) + at);
    }
    c.require(cop[1] > cop[0], "ratio_cop trend broken at delta=" + num(delta));

    // The COP sweep stops at p = 0.90: the near-degenerate bound genuinely
    // fails in a narrow window as p -> 1 at finite splitting.
    const auto rows = run_sweep(make_sweep(base_params(delta, 0.05, 0.5),
                                           SweepAxis::p, -0.99, 0.90, 21));
    for (const SweepRow& row : rows) {
      const std::string at =
          " at delta=" + num(delta) + " p=" + num(row.value);
      c.require(row.report.has_value() && row.report->ratio_cop.has_value(),
                "ratio_cop missing on sweep" + at);
      if (row.report && row.report->ratio_cop)
        c.require(*row.report->ratio_cop <= 1.0 + 1e-9,
                  "COP bound violated" + at);
    }
  }
  return c;
}

/// 10 — maximizing-phase positions: out-of-phase locking for the
/// mutual-coupling engine, in-phase locking for the entrained refrigerator,
/// and the exact engine/refrigerator mirror at zero splitting.
Check criterion_10() {
  Check c;
  const double cell64 = 2.0 * kPi / 64.0;

  // Mutual-coupling engine panel: relative phase within one 64-cell of +-pi.
  {
    const MaserParams prm = base_params(0.05, 0.5, -0.99);
    const SmaxNumeric smax = smax_numeric(numeric_steady_state(prm).rho);
    const double rel = wrap(smax.argmax[0] - smax.argmax[1]);
    c.require(std::abs(std::abs(rel) - kPi) <= cell64,
              "engine relative phase " + num(rel) + " not at +-pi");
  }
  // Entrained refrigerator panel: relative phase within one 64-cell of zero.
  {
    const MaserParams prm = base_params(0.05, 0.05, 0.5);
    const SmaxNumeric smax = smax_numeric(numeric_steady_state(prm).rho);
    const double rel = wrap(smax.argmax[0] - smax.argmax[1]);
    c.require(std::abs(rel) <= cell64,
              "refrigerator relative phase " + num(rel) + " not at 0");
  }
  // Zero-splitting mirror: the engine maximum and the refrigerator minimum
  // land on identical grid cells for mirrored working points.
  for (double p : {0.5, -0.99}) {
    const PhaseGrid engine = phase_distribution(
        numeric_steady_state(base_params(0.0, 0.5, p)).rho, 256);
    const PhaseGrid fridge = phase_distribution(
        numeric_steady_state(base_params(0.0, 0.05, p)).rho, 256);
    int ei = 0, ej = 0, fi = 0, fj = 0;
    for (int i = 0; i < 256; ++i) {
      for (int j = 0; j < 256; ++j) {
        if (engine.S(i, j) > engine.S(ei, ej)) {
          ei = i;
          ej = j;
        }
        if (fridge.S(i, j) < fridge.S(fi, fj)) {
          fi = i;
          fj = j;
        }
      }
    }
    c.require(ei == fi && ej == fj,
              "mirror broken at p=" + num(p) + ": engine max cell (" +
                  num(ei) + "," + num(ej) + "), refrigerator min cell (" +
                  num(fi) + "," + num(fj) + ")");
  }
  return c;
}

/// 11 — integrating the explicitly time-dependent lab-frame equation and
/// mapping into the rotating frame reproduces the rotating-frame evolution.
Check criterion_11() {
  Check c;
  const MaserParams prm = base_params(0.05);
  Eigen::Vector4cd psi;
  psi << 0.5, 0.5, 0.5, 0.5;
  const Matrix4 rho0 = psi * psi.adjoint();

  OdeOptions opts{};
  opts.tol = 1e-11;
  const double t1 = 50.0;
  const OdeResult lab = integrate_adaptive(
      [&prm](double t, const Matrix4& rho) { return lab_frame_rhs(prm, t, rho); },
      rho0, 0.0, t1, opts);
  const OdeResult rot = integrate_adaptive(
      [&prm](double, const Matrix4& rho) { return generator_rhs(prm, rho); },
      rho0, 0.0, t1, opts);
  const double mismatch = diff(to_rotating_frame(prm, t1, lab.state), rot.state);
  c.require(mismatch <= 1e-6,
            "frame mismatch " + num(mismatch) + " at t=" + num(t1));
  return c;
}

/// 12 — the vectorized generator is exactly the linear map of the direct
/// right-hand side (trace-free, Hermiticity-preserving), and the bound
/// summary over a mixed-regime data set lands as documented.
Check criterion_12() {
  Check c;
  const MaserParams prm = base_params(0.05);
  const Matrix16 L = vectorize_generator(prm);
  std::mt19937_64 gen(20260817);
  for (int i = 0; i < 100; ++i) {
    const Matrix4 h = testutil::random_hermitian(gen);
    const Matrix4 direct = generator_rhs(prm, h);
    c.require(std::abs(direct.trace()) <= 1e-12,
              "trace leak " + num(std::abs(direct.trace())));
    c.require(diff(direct, direct.adjoint()) <= 1e-12, "Hermiticity leak");
    const Matrix4 mapped = unvectorize_state(L * vectorize_state(h));
    c.require(diff(direct, mapped) <= 1e-13,
              "matrix/vectorized mismatch " + num(diff(direct, mapped)));
  }

  std::vector<BoundReport> reports;
  for (double r : {0.2, 0.5, 0.8, 2.0, 3.0, 5.0}) {
    const MaserParams point = base_params(0.05, r * 0.1, 0.5);
    reports.push_back(assemble_bound_report(point, numeric_steady_state(point)));
  }
  const SummaryTable table = summarize_bounds(reports);
  c.require(table.ps_engine.points == 3 && table.ps_engine.violations == 3,
            "power-sync engine tally "
            "" + num(table.ps_engine.violations) + "/" +
                num(table.ps_engine.points));
  c.require(table.ps_refrigerator.satisfied(), "power-sync refrigerator tally");
  c.require(table.qs_engine.satisfied() && table.qs_refrigerator.satisfied(),
            "coherent-heat tallies");
  c.require(table.es_engine.satisfied(), "efficiency-sync tally");
  c.require(table.cop_refrigerator.satisfied(), "cop-sync tally");
  c.require(table.render().find("VIOLATED") != std::string::npos,
            "rendered table lacks the violation marker");
  return c;
}

struct Criterion {
  const char* label;
  Check (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"coupling ratio at the reference working points", criterion_01},
      {"steady-state solvers agree pairwise", criterion_02},
      {"zero-splitting steady-state structure", criterion_03},
      {"first law and bath-flux identities", criterion_04},
      {"efficiency 2/3 and COP 1/2 at zero splitting", criterion_05},
      {"closed-form synchronization maximum on all branches", criterion_06},
      {"power-to-synchronization ratio pattern", criterion_07},
      {"coherent-heat bound with maximum toward p = -1", criterion_08},
      {"efficiency and COP synchronization bounds", criterion_09},
      {"phase locking positions and the zero-splitting mirror", criterion_10},
      {"lab-frame and rotating-frame evolutions agree", criterion_11},
      {"vectorized generator consistency and bound summary", criterion_12},
  };

  int failures = 0;
  for (int i = 0; i < 12; ++i) {
    Check result;
    try {
      result = criteria[i].run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("unexpected exception: ") + e.what();
    }
    if (result.ok) {
      std::printf("ACCEPTANCE %02d: PASS — %s\n", i + 1, criteria[i].label);
    } else {
      ++failures;
      std::printf("ACCEPTANCE %02d: FAIL — %s (%s)\n", i + 1,
                  criteria[i].label, result.detail.c_str());
    }
  }
  return failures == 0 ? 0 : 1;
}
