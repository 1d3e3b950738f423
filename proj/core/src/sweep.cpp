#include "maser/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "maser/errors.hpp"

namespace maser {

using nlohmann::json;

std::string to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::nh2_over_nc: return "nh2_over_nc";
    case SweepAxis::p: return "p";
    case SweepAxis::delta: return "delta";
    case SweepAxis::lambda: return "lambda";
  }
  return "unknown";
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

void check_config(const SweepConfig& config) {
  if (!(config.from < config.to))
    throw ConfigError("sweep requires from < to");
  if (config.points < 2) throw ConfigError("sweep requires points >= 2");
  if (config.axis == SweepAxis::nh2_over_nc && !(config.base.n_c > 0.0))
    throw ConfigError("nh2_over_nc sweep requires base n_c > 0");
  if (config.solver == SolverChoice::analytic) {
    const bool delta_ok =
        config.base.delta == 0.0 && config.axis != SweepAxis::delta;
    if (!delta_ok || !config.base.drive_is_resonant()) {
      throw ConfigError(
          "the analytic solver applies only at delta == 0 with the drive on "
          "resonance");
    }
  }
}

std::string optional_csv(const std::optional<double>& v) {
  return v ? format_number(*v) : "NA";
}

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

std::vector<double> sweep_values(const SweepConfig& config) {
  check_config(config);
  std::vector<double> values(static_cast<size_t>(config.points));
  const double step = (config.to - config.from) / (config.points - 1);
  for (int i = 0; i < config.points; ++i) {
    values[static_cast<size_t>(i)] =
        i == config.points - 1 ? config.to : config.from + step * i;
  }
  return values;
}

MaserParams apply_axis(const SweepConfig& config, double value) {
  MaserParams prm = config.base;
  switch (config.axis) {
    case SweepAxis::nh2_over_nc:
      prm.n_h2 = value * prm.n_c;
      break;
    case SweepAxis::p:
      prm.p = value;
      break;
    case SweepAxis::delta:
      prm.delta = value;
      break;
    case SweepAxis::lambda:
      prm.lambda_drive = value;
      break;
  }
  return prm;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  const std::vector<double> values = sweep_values(config);
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double value : values) {
    SweepRow row{};
    row.value = value;
    try {
      const MaserParams prm = apply_axis(config, value);
      prm.validate();
      const SteadyStateSolution sol = solve_steady_state(prm, config.solver);
      row.report = assemble_bound_report(prm, sol);
    } catch (const MaserError& err) {
      row.error = err.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const SweepConfig& config,
                     std::ostream& out) {
  out << to_string(config.axis)
      << ",k,P,Qh_inc,Qh_coh,Qc,Smax,ratio_ps,ratio_qs,eta,eta_S,chi,chi_S,"
         "regime,residual,error\n";
  for (const SweepRow& row : rows) {
    out << format_number(row.value) << ',';
    if (row.report) {
      const BoundReport& r = *row.report;
      out << optional_csv(r.k) << ',' << format_number(r.currents.power) << ','
          << format_number(r.currents.q_hot_inc) << ','
          << format_number(r.currents.q_hot_coh) << ','
          << format_number(r.currents.q_cold) << ',' << format_number(r.s_max)
          << ',' << optional_csv(r.ratio_ps) << ',' << optional_csv(r.ratio_qs)
          << ',' << optional_csv(r.eta) << ',' << optional_csv(r.eta_s) << ','
          << optional_csv(r.chi) << ',' << optional_csv(r.chi_s) << ','
          << to_string(r.regime) << ',' << format_number(r.residual) << ',';
    } else {
      out << "NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,";
    }
    // Commas in error messages would break the column structure.
    std::string err = row.error;
    for (char& ch : err) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    out << err << '\n';
  }
}

void write_sweep_json(const std::vector<SweepRow>& rows, const SweepConfig& config,
                      std::ostream& out) {
  const std::string axis = to_string(config.axis);
  json arr = json::array();
  for (const SweepRow& row : rows) {
    json obj;
    obj[axis] = row.value;
    if (row.report) {
      const BoundReport& r = *row.report;
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
      obj["regime"] = to_string(r.regime);
      obj["residual"] = r.residual;
    } else {
      for (const char* key : {"k", "P", "Qh_inc", "Qh_coh", "Qc", "Smax",
                              "ratio_ps", "ratio_qs", "eta", "eta_S", "chi",
                              "chi_S", "regime", "residual"}) {
        obj[key] = nullptr;
      }
    }
    obj["error"] = row.error;
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

namespace {

[[noreturn]] void config_fail(const std::string& message) {
  throw ConfigError(message);
}

double require_number(const json& j, const std::string& key) {
  if (!j.is_number()) config_fail("config key '" + key + "' must be a number");
  return j.get<double>();
}

MaserParams params_from_json(const json& j) {
  if (!j.is_object()) config_fail("parameter config must be a JSON object");

  MaserParams prm{};
  bool saw_lambda = false, saw_omega_drive = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "omega1") {
      prm.omega1 = require_number(value, key);
    } else if (key == "omega2") {
      prm.omega2 = require_number(value, key);
    } else if (key == "delta") {
      prm.delta = require_number(value, key);
    } else if (key == "Omega" || key == "omega_drive") {
      if (saw_omega_drive) config_fail("duplicate drive-frequency key");
      saw_omega_drive = true;
      if (value.is_string()) {
        if (value.get<std::string>() != "resonant_mid")
          config_fail("drive frequency string must be \"resonant_mid\"");
        prm.omega_drive.reset();
      } else {
        prm.omega_drive = require_number(value, key);
      }
    } else if (key == "lambda_drive" || key == "lambda") {
      if (saw_lambda) config_fail("duplicate drive-strength key");
      saw_lambda = true;
      prm.lambda_drive = require_number(value, key);
    } else if (key == "gamma_h") {
      prm.gamma_h = require_number(value, key);
    } else if (key == "gamma_c") {
      prm.gamma_c = require_number(value, key);
    } else if (key == "n_c") {
      prm.n_c = require_number(value, key);
    } else if (key == "n_h2") {
      prm.n_h2 = require_number(value, key);
    } else if (key == "p") {
      prm.p = require_number(value, key);
    } else {
      config_fail("unknown parameter key '" + key + "'");
    }
  }
  prm.validate();
  return prm;
}

json parse_text(const std::string& text) {
  json j = json::parse(text, /*cb=*/nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) config_fail("invalid JSON");
  return j;
}

}  // namespace

MaserParams parse_params_text(const std::string& json_text) {
  try {
    return params_from_json(parse_text(json_text));
  } catch (const PreconditionViolated& err) {
    config_fail(std::string("invalid parameters: ") + err.what());
  }
}

SweepConfig parse_sweep_config_text(const std::string& json_text) {
  const json j = parse_text(json_text);
  if (!j.is_object()) config_fail("sweep config must be a JSON object");

  SweepConfig config{};
  bool saw_base = false, saw_axis = false, saw_from = false, saw_to = false,
       saw_points = false;

  for (const auto& [key, value] : j.items()) {
    if (key == "base") {
      try {
        config.base = params_from_json(value);
      } catch (const PreconditionViolated& err) {
        config_fail(std::string("invalid base parameters: ") + err.what());
      }
      saw_base = true;
    } else if (key == "sweep_axis") {
      if (!value.is_string()) config_fail("sweep_axis must be a string");
      const std::string axis = value.get<std::string>();
      if (axis == "nh2_over_nc") config.axis = SweepAxis::nh2_over_nc;
      else if (axis == "p") config.axis = SweepAxis::p;
      else if (axis == "delta") config.axis = SweepAxis::delta;
      else if (axis == "lambda") config.axis = SweepAxis::lambda;
      else config_fail("unknown sweep_axis '" + axis + "'");
      saw_axis = true;
    } else if (key == "from") {
      config.from = require_number(value, key);
      saw_from = true;
    } else if (key == "to") {
      config.to = require_number(value, key);
      saw_to = true;
    } else if (key == "points") {
      if (!value.is_number_integer()) config_fail("points must be an integer");
      config.points = value.get<int>();
      saw_points = true;
    } else if (key == "solver") {
      if (!value.is_string()) config_fail("solver must be a string");
      const std::string solver = value.get<std::string>();
      if (solver == "auto") config.solver = SolverChoice::automatic;
      else if (solver == "analytic") config.solver = SolverChoice::analytic;
      else if (solver == "nullspace") config.solver = SolverChoice::nullspace;
      else if (solver == "evolve") config.solver = SolverChoice::evolve;
      else config_fail("unknown solver '" + solver + "'");
    } else {
      config_fail("unknown sweep config key '" + key + "'");
    }
  }

  if (!saw_base) config_fail("sweep config requires \"base\"");
  if (!saw_axis) config_fail("sweep config requires \"sweep_axis\"");
  if (!saw_from || !saw_to) config_fail("sweep config requires \"from\" and \"to\"");
  if (!saw_points) config_fail("sweep config requires \"points\"");

  check_config(config);
  return config;
}

}  // namespace maser
