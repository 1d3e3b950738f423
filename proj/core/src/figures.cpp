#include "maser/figures.hpp"

#include <fstream>
#include <map>

#include <json.hpp>

#include "maser/bounds.hpp"
#include "maser/errors.hpp"
#include "maser/params.hpp"
#include "maser/steady_state.hpp"
#include "maser/sweep.hpp"
#include "maser/synchronization.hpp"
#include "maser/thermodynamics.hpp"

namespace maser {

using nlohmann::json;

namespace {

constexpr int kPhaseGridSize = 256;

/// Shared defaults for every panel: omega1 = 1, omega2 = 3, gamma_h =
/// gamma_c = 0.1, n_c = 0.1, lambda = 0.05, drive at the two-transition
/// midpoint.
MaserParams panel_base() {
  MaserParams prm{};
  prm.omega1 = 1.0;
  prm.omega2 = 3.0;
  prm.delta = 0.05;
  prm.omega_drive.reset();
  prm.lambda_drive = 0.05;
  prm.gamma_h = 0.1;
  prm.gamma_c = 0.1;
  prm.n_c = 0.1;
  return prm;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file", path.string());
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing output file", path.string());
}

json params_json(const MaserParams& prm) {
  const BathOccupations occ = derive_bath_occupations(prm);
  json j;
  j["omega1"] = prm.omega1;
  j["omega2"] = prm.omega2;
  j["omega3"] = prm.omega3();
  j["delta"] = prm.delta;
  j["Omega"] = prm.drive_frequency();
  j["lambda"] = prm.lambda_drive;
  j["gamma_h"] = prm.gamma_h;
  j["gamma_c"] = prm.gamma_c;
  j["n_c"] = prm.n_c;
  j["n_h2"] = prm.n_h2;
  j["n_h3"] = occ.n_h3;
  j["T_h"] = occ.T_h;
  j["T_c"] = occ.T_c;
  j["p"] = prm.p;
  return j;
}

json report_json(const BoundReport& r) {
  auto opt = [](const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
  };
  json j;
  j["k"] = opt(r.k);
  j["regime"] = to_string(r.regime);
  j["P"] = r.currents.power;
  j["Qh_inc"] = r.currents.q_hot_inc;
  j["Qh_coh"] = r.currents.q_hot_coh;
  j["Qc"] = r.currents.q_cold;
  j["Smax"] = r.s_max;
  j["ratio_ps"] = opt(r.ratio_ps);
  j["ratio_qs"] = opt(r.ratio_qs);
  j["eta"] = opt(r.eta);
  j["eta_S"] = opt(r.eta_s);
  j["chi"] = opt(r.chi);
  j["chi_S"] = opt(r.chi_s);
  j["solver"] = to_string(r.method);
  j["residual"] = r.residual;
  return j;
}

void write_metadata(const json& meta, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  out << meta.dump(2) << '\n';
  finish_output(out, path);
}

/// One phase quasi-distribution panel: steady state via the null-space
/// solver, S(phi21, phi31) on a kPhaseGridSize^2 grid, plus metadata.
FigureOutput phase_panel(const std::string& id, double n_h2, double p,
                         const std::filesystem::path& out_dir) {
  MaserParams prm = panel_base();
  prm.n_h2 = n_h2;
  prm.p = p;

  const SteadyStateSolution sol = numeric_steady_state(prm);
  const PhaseGrid grid = phase_distribution(sol.rho, kPhaseGridSize);
  const SyncResult sync = analyze_synchronization(prm, sol.rho);
  const BoundReport report = assemble_bound_report(prm, sol);

  const std::filesystem::path data_path = out_dir / (id + "_phase.csv");
  std::ofstream data = open_output(data_path);
  write_phase_distribution_csv(grid, data);
  finish_output(data, data_path);

  json meta;
  meta["figure"] = id;
  meta["panel"] = "phase quasi-distribution S(phi21, phi31)";
  meta["params"] = params_json(prm);
  meta["grid_size"] = grid.n;
  meta["phase_convention"] =
      "S = [Re(rho12 e^{i phi21}) + Re(rho13 e^{i phi31}) + Re(rho23 e^{i "
      "(phi21 - phi31)})] / (16 pi^2); grid angles lie in (-pi, pi], rows "
      "advance phi21";
  meta["k"] = sync.k;
  meta["branch"] = to_string(sync.branch);
  meta["Smax"] = sync.s_max_numeric;
  meta["argmax_phi21"] = sync.argmax_phases[0];
  meta["argmax_phi31"] = sync.argmax_phases[1];
  if (sync.s_max_closed) meta["Smax_closed"] = *sync.s_max_closed;
  meta["report"] = report_json(report);
  meta["nullspace_dim"] = sol.nullspace_dim;

  const std::filesystem::path meta_path = out_dir / (id + "_metadata.json");
  write_metadata(meta, meta_path);
  return FigureOutput{{data_path}, meta_path};
}

struct SweepSeries {
  std::string file_stem;     // e.g. "fig3a_delta_0p05"
  std::string series_label;  // human-readable description of this series
  SweepConfig config;
};

FigureOutput sweep_panel(const std::string& id, const std::string& panel_y,
                         const std::vector<SweepSeries>& series,
                         const std::filesystem::path& out_dir,
                         const std::string& note = {}) {
  FigureOutput out{};
  json meta;
  meta["figure"] = id;
  meta["panel_y"] = panel_y;
  if (!note.empty()) meta["note"] = note;
  json series_meta = json::array();

  for (const SweepSeries& s : series) {
    const std::vector<SweepRow> rows = run_sweep(s.config);
    const std::filesystem::path data_path = out_dir / (s.file_stem + ".csv");
    std::ofstream data = open_output(data_path);
    write_sweep_csv(rows, s.config, data);
    finish_output(data, data_path);
    out.data_files.push_back(data_path);

    json sm;
    sm["file"] = data_path.filename().string();
    sm["label"] = s.series_label;
    sm["axis"] = to_string(s.config.axis);
    sm["from"] = s.config.from;
    sm["to"] = s.config.to;
    sm["points"] = s.config.points;
    sm["base_params"] = params_json(s.config.base);
    series_meta.push_back(std::move(sm));
  }

  meta["series"] = series_meta;
  const std::filesystem::path meta_path = out_dir / (id + "_metadata.json");
  write_metadata(meta, meta_path);
  out.metadata_file = meta_path;
  return out;
}

SweepConfig ratio_sweep(double delta, double n_h2, double p, SweepAxis axis,
                        double from, double to, int points) {
  SweepConfig cfg{};
  cfg.base = panel_base();
  cfg.base.delta = delta;
  cfg.base.n_h2 = n_h2;
  cfg.base.p = p;
  cfg.axis = axis;
  cfg.from = from;
  cfg.to = to;
  cfg.points = points;
  return cfg;
}

}  // namespace

std::vector<std::string> figure_ids() {
  return {"fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b",
          "fig4a", "fig4b", "fig5a", "fig5b", "fig5c", "fig5d"};
}

FigureOutput reproduce_figure(const std::string& figure_id,
                              const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory", out_dir.string());

  // Phase panels: the four (n_h2, p) corners at delta = 0.05.
  if (figure_id == "fig2a") return phase_panel(figure_id, 0.5, 0.5, out_dir);
  if (figure_id == "fig2b") return phase_panel(figure_id, 0.5, -0.99, out_dir);
  if (figure_id == "fig2c") return phase_panel(figure_id, 0.05, 0.5, out_dir);
  if (figure_id == "fig2d") return phase_panel(figure_id, 0.05, -0.99, out_dir);

  if (figure_id == "fig3a") {
    return sweep_panel(
        figure_id, "ratio_ps = |P| / (kappa * Smax) vs n_h2/n_c",
        {{"fig3a_delta_0p05", "delta = 0.05",
          ratio_sweep(0.05, 0.5, 0.5, SweepAxis::nh2_over_nc, 0.2, 5.0, 25)},
         {"fig3a_delta_0p20", "delta = 0.20",
          ratio_sweep(0.20, 0.5, 0.5, SweepAxis::nh2_over_nc, 0.2, 5.0, 25)}},
        out_dir);
  }
  if (figure_id == "fig3b") {
    return sweep_panel(
        figure_id, "ratio_ps = |P| / (kappa * Smax) vs p",
        {{"fig3b_ratio_5", "n_h2/n_c = 5",
          ratio_sweep(0.05, 0.5, 0.5, SweepAxis::p, -0.99, 0.99, 21)},
         {"fig3b_ratio_0p5", "n_h2/n_c = 0.5",
          ratio_sweep(0.05, 0.05, 0.5, SweepAxis::p, -0.99, 0.99, 21)}},
        out_dir);
  }
  if (figure_id == "fig4a") {
    return sweep_panel(
        figure_id, "ratio_qs = |Qh_coh| / (alpha * Smax) vs n_h2/n_c",
        {{"fig4a_p_0p5", "p = 0.5",
          ratio_sweep(0.05, 0.5, 0.5, SweepAxis::nh2_over_nc, 0.2, 5.0, 25)},
         {"fig4a_p_m0p99", "p = -0.99",
          ratio_sweep(0.05, 0.5, -0.99, SweepAxis::nh2_over_nc, 0.2, 5.0, 25)}},
        out_dir);
  }
  if (figure_id == "fig4b") {
    return sweep_panel(
        figure_id, "ratio_qs = |Qh_coh| / (alpha * Smax) vs p",
        {{"fig4b_ratio_5", "n_h2/n_c = 5",
          ratio_sweep(0.05, 0.5, 0.5, SweepAxis::p, -0.99, 0.99, 21)},
         {"fig4b_ratio_0p5", "n_h2/n_c = 0.5",
          ratio_sweep(0.05, 0.05, 0.5, SweepAxis::p, -0.99, 0.99, 21)}},
        out_dir);
  }
  if (figure_id == "fig5a") {
    return sweep_panel(
        figure_id, "ratio_es = eta_S / eta vs n_h2/n_c (engine side)",
        {{"fig5a_delta_0p05", "delta = 0.05",
          ratio_sweep(0.05, 0.5, 0.1, SweepAxis::nh2_over_nc, 2.0, 5.0, 25)},
         {"fig5a_delta_0p10", "delta = 0.10",
          ratio_sweep(0.10, 0.5, 0.1, SweepAxis::nh2_over_nc, 2.0, 5.0, 25)}},
        out_dir, "plot eta_S / eta from the eta_S and eta CSV columns");
  }
  if (figure_id == "fig5b") {
    return sweep_panel(
        figure_id, "ratio_es = eta_S / eta vs p (engine side)",
        {{"fig5b_delta_0p05", "delta = 0.05",
          ratio_sweep(0.05, 0.2, 0.5, SweepAxis::p, -0.99, 0.99, 21)},
         {"fig5b_delta_0p10", "delta = 0.10",
          ratio_sweep(0.10, 0.2, 0.5, SweepAxis::p, -0.99, 0.99, 21)}},
        out_dir, "plot eta_S / eta from the eta_S and eta CSV columns");
  }
  if (figure_id == "fig5c") {
    return sweep_panel(
        figure_id, "ratio_cop = chi_S / chi vs n_h2/n_c (refrigerator side)",
        {{"fig5c_delta_0p05", "delta = 0.05",
          ratio_sweep(0.05, 0.05, 0.1, SweepAxis::nh2_over_nc, 0.2, 0.8, 25)},
         {"fig5c_delta_0p10", "delta = 0.10",
          ratio_sweep(0.10, 0.05, 0.1, SweepAxis::nh2_over_nc, 0.2, 0.8, 25)}},
        out_dir, "plot chi_S / chi from the chi_S and chi CSV columns");
  }
  if (figure_id == "fig5d") {
    return sweep_panel(
        figure_id, "ratio_cop = chi_S / chi vs p (refrigerator side)",
        {{"fig5d_delta_0p05", "delta = 0.05",
          ratio_sweep(0.05, 0.05, 0.5, SweepAxis::p, -0.99, 0.90, 21)},
         {"fig5d_delta_0p10", "delta = 0.10",
          ratio_sweep(0.10, 0.05, 0.5, SweepAxis::p, -0.99, 0.90, 21)}},
        out_dir,
        "plot chi_S / chi from the chi_S and chi CSV columns; the p range "
        "stops at 0.90 because the near-degenerate approximation degrades as "
        "p -> 1 at delta > 0");
  }

  throw ConfigError("unknown figure id '" + figure_id + "'");
}

}  // namespace maser
