// Command-line front end: steady-state reports, parameter sweeps, phase
// quasi-distribution grids, bound summaries, and canned figure data sets.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "maser/bounds.hpp"
#include "maser/errors.hpp"
#include "maser/figures.hpp"
#include "maser/params.hpp"
#include "maser/steady_state.hpp"
#include "maser/sweep.hpp"
#include "maser/synchronization.hpp"

namespace {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw maser::IoError("cannot read config file", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw maser::IoError("failed reading config file", path);
  return buf.str();
}

/// Writes to the file at `path`, or to stdout when path is empty.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) : path_(path) {
    if (!path_.empty()) {
      file_.open(path_);
      if (!file_) throw maser::IoError("cannot open output file", path_);
    }
  }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }
  void finish() {
    stream().flush();
    if (!path_.empty() && !file_)
      throw maser::IoError("failed writing output file", path_);
  }

 private:
  std::string path_;
  std::ofstream file_;
};

/// Default parameter set when no --config is given: the delta = 0.05,
/// n_h2 = 0.5, p = 0.5 working point with the drive at the two-transition
/// midpoint.
maser::MaserParams default_params() {
  maser::MaserParams prm{};
  prm.delta = 0.05;
  return prm;
}

maser::MaserParams load_params(const std::string& config_path) {
  if (config_path.empty()) return default_params();
  return maser::parse_params_text(read_text_file(config_path));
}

std::string optional_csv(const std::optional<double>& v) {
  return v ? maser::format_number(*v) : "NA";
}

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

int run_steady(const std::string& config_path, maser::SolverChoice solver,
               const std::string& out_path, const std::string& format) {
  const maser::MaserParams prm = load_params(config_path);
  const maser::SteadyStateSolution sol = maser::solve_steady_state(prm, solver);
  const maser::BoundReport r = maser::assemble_bound_report(prm, sol);

  OutputSink sink(out_path);
  if (format == "csv") {
    sink.stream()
        << "k,P,Qh_inc,Qh_coh,Qc,Smax,ratio_ps,ratio_qs,eta,eta_S,chi,chi_S,"
           "regime,residual\n"
        << optional_csv(r.k) << ',' << maser::format_number(r.currents.power)
        << ',' << maser::format_number(r.currents.q_hot_inc) << ','
        << maser::format_number(r.currents.q_hot_coh) << ','
        << maser::format_number(r.currents.q_cold) << ','
        << maser::format_number(r.s_max) << ',' << optional_csv(r.ratio_ps)
        << ',' << optional_csv(r.ratio_qs) << ',' << optional_csv(r.eta) << ','
        << optional_csv(r.eta_s) << ',' << optional_csv(r.chi) << ','
        << optional_csv(r.chi_s) << ',' << maser::to_string(r.regime) << ','
        << maser::format_number(r.residual) << '\n';
  } else {
    json obj;
    obj["k"] = optional_json(r.k);
    obj["P"] = r.currents.power;
    obj["Qh_inc"] = r.currents.q_hot_inc;
    obj["Qh_coh"] = r.currents.q_hot_coh;
    obj["Qc"] = r.currents.q_cold;
    obj["Smax"] = r.s_max;
    obj["ratio_ps"] = optional_json(r.ratio_ps);
    obj["ratio_qs"] = optional_json(r.ratio_qs);
    obj["eta"] = optional_json(r.eta);
    obj["eta_S"] = optional_json(r.eta_s);
    obj["chi"] = optional_json(r.chi);
    obj["chi_S"] = optional_json(r.chi_s);
    obj["regime"] = maser::to_string(r.regime);
    obj["residual"] = r.residual;
    obj["solver"] = maser::to_string(r.method);
    obj["flags"] = r.flags;
    sink.stream() << obj.dump(2) << '\n';
  }
  sink.finish();
  return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_path,
                  const std::string& format) {
  const maser::SweepConfig cfg =
      maser::parse_sweep_config_text(read_text_file(config_path));
  const std::vector<maser::SweepRow> rows = maser::run_sweep(cfg);
  OutputSink sink(out_path);
  if (format == "csv") {
    maser::write_sweep_csv(rows, cfg, sink.stream());
  } else {
    maser::write_sweep_json(rows, cfg, sink.stream());
  }
  sink.finish();
  return 0;
}

int run_phase_dist(const std::string& config_path, maser::SolverChoice solver,
                   int grid_size, const std::string& out_path) {
  const maser::MaserParams prm = load_params(config_path);
  const maser::SteadyStateSolution sol = maser::solve_steady_state(prm, solver);
  const maser::PhaseGrid grid = maser::phase_distribution(sol.rho, grid_size);
  OutputSink sink(out_path);
  maser::write_phase_distribution_csv(grid, sink.stream());
  sink.finish();
  return 0;
}

/// Accepts a sweep config (object with "base"), a single parameter object,
/// or a JSON array of parameter objects, and prints the bound summary over
/// the resulting working points.
int run_bounds(const std::string& config_path, const std::string& out_path) {
  const std::string text = read_text_file(config_path);
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::parse_error& e) {
    throw maser::ConfigError(std::string("config is not valid JSON: ") +
                             e.what());
  }

  std::vector<maser::BoundReport> reports;
  if (parsed.is_object() && parsed.contains("base")) {
    const std::vector<maser::SweepRow> rows =
        maser::run_sweep(maser::parse_sweep_config_text(text));
    for (const maser::SweepRow& row : rows) {
      if (row.report) reports.push_back(*row.report);
    }
  } else {
    std::vector<std::string> point_texts;
    if (parsed.is_array()) {
      for (const json& item : parsed) point_texts.push_back(item.dump());
    } else {
      point_texts.push_back(text);
    }
    for (const std::string& point : point_texts) {
      const maser::MaserParams prm = maser::parse_params_text(point);
      reports.push_back(maser::assemble_bound_report(
          prm, maser::solve_steady_state(prm, maser::SolverChoice::automatic)));
    }
  }

  const maser::SummaryTable table = maser::summarize_bounds(reports);
  OutputSink sink(out_path);
  sink.stream() << table.render();
  sink.finish();
  return 0;
}

int run_figure(const std::string& figure_id, const std::string& out_dir) {
  std::vector<std::string> ids;
  if (figure_id == "all") {
    ids = maser::figure_ids();
  } else {
    ids.push_back(figure_id);
  }
  for (const std::string& id : ids) {
    const maser::FigureOutput out = maser::reproduce_figure(id, out_dir);
    for (const auto& path : out.data_files)
      std::cout << "wrote " << path.string() << '\n';
    std::cout << "wrote " << out.metadata_file.string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Steady states, synchronization measures, and thermodynamic bound "
      "ratios of a driven four-level maser"};
  app.require_subcommand(1);

  const std::map<std::string, maser::SolverChoice> solver_map{
      {"auto", maser::SolverChoice::automatic},
      {"analytic", maser::SolverChoice::analytic},
      {"nullspace", maser::SolverChoice::nullspace},
      {"evolve", maser::SolverChoice::evolve}};

  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::string figure_id;
  std::string figure_dir = "figures";
  int grid_size = 256;
  maser::SolverChoice solver = maser::SolverChoice::automatic;

  CLI::App* steady = app.add_subcommand(
      "steady", "Solve one steady state and report currents and bound ratios");
  steady->add_option("--config", config_path, "Parameter JSON file");
  steady->add_option("--solver", solver, "Steady-state solver")
      ->transform(CLI::CheckedTransformer(solver_map, CLI::ignore_case));
  steady->add_option("--out", out_path, "Output file (default: stdout)");
  steady->add_option("--format", format, "Output format (default: csv)")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Sweep one parameter axis and report per-point bound ratios");
  sweep->add_option("--config", config_path, "Sweep config JSON file")
      ->required();
  sweep->add_option("--out", out_path, "Output file (default: stdout)");
  sweep->add_option("--format", format, "Output format (default: csv)")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* phase = app.add_subcommand(
      "phase-dist",
      "Tabulate the phase quasi-distribution S(phi21, phi31) as CSV");
  phase->add_option("--config", config_path, "Parameter JSON file");
  phase->add_option("--grid", grid_size, "Grid points per axis (default: 256)")
      ->check(CLI::Range(16, 8192));
  phase->add_option("--solver", solver, "Steady-state solver")
      ->transform(CLI::CheckedTransformer(solver_map, CLI::ignore_case));
  phase->add_option("--out", out_path, "Output file (default: stdout)");

  CLI::App* bounds = app.add_subcommand(
      "bounds", "Run a sweep and print the bound satisfaction summary table");
  bounds->add_option("--config", config_path, "Sweep config JSON file")
      ->required();
  bounds->add_option("--out", out_path, "Output file (default: stdout)");

  CLI::App* figure = app.add_subcommand(
      "figure", "Write the data series behind one canned figure (or 'all')");
  figure
      ->add_option("id", figure_id,
                   "Figure id (fig2a..fig2d, fig3a, fig3b, fig4a, fig4b, "
                   "fig5a..fig5d, all)")
      ->required();
  figure->add_option("--out", figure_dir,
                     "Output directory (default: ./figures)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits 0; usage errors exit 2
  }

  try {
    if (steady->parsed())
      return run_steady(config_path, solver, out_path, format);
    if (sweep->parsed()) return run_sweep_cmd(config_path, out_path, format);
    if (phase->parsed())
      return run_phase_dist(config_path, solver, grid_size, out_path);
    if (bounds->parsed()) return run_bounds(config_path, out_path);
    if (figure->parsed()) return run_figure(figure_id, figure_dir);
  } catch (const maser::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const maser::MaserError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
