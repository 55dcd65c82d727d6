#include "dint/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "dint/errors.hpp"
#include "dint/format.hpp"
#include "dint/metrics.hpp"

namespace dint::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write '" + path.string() + "'");
  os << content;
}

fs::path prepare_output(const RunConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "'");
  write_file(dir / "config.json", to_json(cfg).dump(2) + "\n");
  return dir;
}

json number_or_null(double v) {
  return std::isfinite(v) ? json(v) : json(nullptr);
}

json trajectory_json(const Trajectory& traj) {
  json cols;
  std::vector<double> x1, x2, x3, a1, a2, a3, e1, e2, e3;
  for (std::size_t j = 0; j < traj.size(); ++j) {
    x1.push_back(traj.states[j].x1);
    x2.push_back(traj.states[j].x2);
    x3.push_back(traj.states[j].x3);
    if (traj.has_truth()) {
      a1.push_back(traj.truths[j].a1);
      a2.push_back(traj.truths[j].a2);
      a3.push_back(traj.truths[j].a3);
      e1.push_back(traj.errors[j].a1);
      e2.push_back(traj.errors[j].a2);
      e3.push_back(traj.errors[j].a3);
    }
  }
  cols["t"] = traj.times;
  cols["x1"] = x1;
  cols["x2"] = x2;
  cols["x3"] = x3;
  cols["a"] = traj.inputs;
  if (traj.has_truth()) {
    cols["a1"] = a1;
    cols["a2"] = a2;
    cols["a3"] = a3;
    cols["e1"] = e1;
    cols["e2"] = e2;
    cols["e3"] = e3;
  }
  return cols;
}

json trajectory_metrics(const RunConfig& cfg, const Trajectory& traj) {
  json m;
  m["samples"] = traj.size();
  m["has_truth"] = traj.has_truth();
  if (!traj.has_truth()) return m;

  std::vector<TimeWindow> windows = cfg.metric_windows;
  const double end = traj.times.back();
  if (windows.empty()) windows = {{0.0, end}, {0.5 * end, end}};

  json channels;
  for (int ch = 1; ch <= 3; ++ch) {
    json c;
    c["max_abs"] = max_abs_error(traj, ch, {0.0, end});
    json rows = json::array();
    for (const auto& w : windows) {
      json row{{"start", w.start}, {"end", w.end}};
      try {
        row["rms"] = rms_error(traj, ch, w);
        row["max_abs"] = max_abs_error(traj, ch, w);
      } catch (const DomainError&) {
        row["rms"] = nullptr;
        row["max_abs"] = nullptr;
      }
      rows.push_back(row);
    }
    c["windows"] = rows;
    channels["e" + std::to_string(ch)] = c;
  }
  m["errors"] = channels;
  m["drift_ratio"] = traj.size() >= 2 ? number_or_null(drift_ratio(traj))
                                      : json(nullptr);
  const auto settle = settling_time(traj, 1, cfg.settle_threshold);
  m["settling_time_e1"] = {{"threshold", cfg.settle_threshold},
                           {"time", settle ? json(*settle) : json(nullptr)}};
  return m;
}

json bode_rows_json(const BodeCurve& curve) {
  json rows = json::array();
  for (const auto& r : curve.rows) {
    rows.push_back({{"f_hz", r.f_hz},
                    {"omega_rad_s", r.omega},
                    {"channel", r.channel},
                    {"magnitude_db", number_or_null(r.magnitude_db)},
                    {"phase_rad", number_or_null(r.phase)},
                    {"phase_unwrapped_rad", number_or_null(r.phase_unwrapped)},
                    {"residual_rms", number_or_null(r.residual_rms)},
                    {"source", to_string(r.source)},
                    {"flag", to_string(r.flag)}});
  }
  return rows;
}

}  // namespace

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const ObserverParams p = cfg.params.build();
  const ValidationReport report = validate_params(p);
  if (cfg.format == OutputFormat::json) {
    json violations = json::array();
    for (const auto& v : report.violations) {
      violations.push_back({{"constraint", to_string(v.constraint)},
                            {"message", v.message},
                            {"threshold", number_or_null(v.threshold)}});
    }
    json doc{{"valid", report.ok()},
             {"params", to_json(p)},
             {"gain_threshold", number_or_null(report.gain_threshold)},
             {"violations", violations}};
    out << doc.dump(2) << '\n';
  } else {
    out << "mode: " << to_string(p.mode()) << "\n"
        << "gain threshold (k2 must exceed): "
        << format_g(report.gain_threshold) << "\n";
    for (const auto& v : report.violations) {
      out << to_string(v.constraint) << " violated: " << v.message << "\n";
    }
    out << (report.ok() ? "valid" : "invalid") << "\n";
  }
  return report.ok() ? kOk : kInvalidParams;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ObserverParams p = cfg.params.build();
  if (!validate_params(p).ok()) {
    cmd_validate(cfg, err);
    return kInvalidParams;
  }
  const Trajectory traj = simulate(p, cfg.signal, cfg.sim);
  const fs::path dir = prepare_output(cfg);

  if (cfg.format == OutputFormat::csv) {
    std::ostringstream csv;
    write_trajectory_csv(csv, traj);
    write_file(dir / "trajectory.csv", csv.str());
  } else {
    json doc{{"config", to_json(cfg)}, {"trajectory", trajectory_json(traj)}};
    write_file(dir / "trajectory.json", doc.dump() + "\n");
  }
  json metrics{{"config", to_json(cfg)},
               {"metrics", trajectory_metrics(cfg, traj)}};
  write_file(dir / "metrics.json", metrics.dump(2) + "\n");
  out << "simulated " << traj.size() << " samples to " << dir.string() << "\n";
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::pair<SweepCase, ObserverParams>> cases;
  for (const auto& c : effective_cases(cfg)) {
    ParamsSource src = cfg.params;
    src.r = c.r;
    src.alpha3 = c.alpha3;
    src.mode = c.mode;
    const ObserverParams p = src.build();
    if (!validate_params(p).ok()) {
      err << "case " << c.label << ": ";
      RunConfig one = cfg;
      one.params = src;
      cmd_validate(one, err);
      return kInvalidParams;
    }
    cases.emplace_back(c, p);
  }

  const fs::path dir = prepare_output(cfg);
  json summary{{"config", to_json(cfg)}, {"curves", json::array()}};
  std::size_t rows = 0;
  std::size_t flagged = 0;
  for (const auto& [c, p] : cases) {
    SweepConfig sw = cfg.sweep;
    sw.amplitude = c.amplitude;
    std::vector<BodeCurve> curves{sweep_observer(p, sw)};
    if (p.is_effectively_linear()) curves.push_back(analytic_curve(p, sw));

    for (const auto& curve : curves) {
      const std::string stem =
          "bode_" + c.label +
          (curve.source == CurveSource::analytic ? "_analytic" : "");
      json entry{{"label", c.label},
                 {"source", to_string(curve.source)},
                 {"params", to_json(p)},
                 {"amplitude", c.amplitude},
                 {"rows", curve.rows.size()},
                 {"flagged", curve.flagged_count()},
                 {"warnings", curve.warnings}};
      if (cfg.format == OutputFormat::csv) {
        std::ostringstream csv;
        write_bode_csv(csv, curve);
        write_file(dir / (stem + ".csv"), csv.str());
        entry["file"] = stem + ".csv";
      } else {
        entry["data"] = bode_rows_json(curve);
      }
      for (const auto& w : curve.warnings) err << c.label << ": " << w << "\n";
      summary["curves"].push_back(entry);
      if (curve.source == CurveSource::sweep) {
        rows += curve.rows.size();
        flagged += curve.flagged_count();
      }
    }
  }
  write_file(dir / "sweep.json", summary.dump(2) + "\n");
  out << "swept " << cases.size() << " case(s), " << flagged << " of " << rows
      << " rows flagged, output in " << dir.string() << "\n";
  const double ok_share =
      rows == 0 ? 1.0 : 1.0 - static_cast<double>(flagged) / rows;
  return ok_share >= kSweepPassFraction ? kOk : kDiverged;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::validate:
        return cmd_validate(cfg, out);
      case Command::simulate:
        return cmd_simulate(cfg, out, err);
      case Command::sweep:
        return cmd_sweep(cfg, out, err);
      case Command::reproduce:
        err << "reproduce needs a scenario name\n";
        return kBadConfig;
    }
  } catch (const DivergedState& e) {
    err << "diverged: " << e.what() << "\n";
    return kDiverged;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const DomainError& e) {
    err << "invalid: " << e.what() << "\n";
    return kInvalidParams;
  }
  return kBadConfig;
}

int main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Double-integrator observers: validation, simulation and "
               "frequency sweeps"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string format;
  std::string scenario;
  std::string method;
  std::optional<double> discard;
  std::optional<unsigned> threads;
  bool print_config = false;

  auto add_common = [&](CLI::App* sub, bool need_config) {
    auto* opt = sub->add_option("--config", config_path, "JSON run config");
    if (need_config) opt->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--discard", discard, "sweep transient fraction in [0,1)");
    sub->add_option("--method", method, "rk4 or euler")
        ->check(CLI::IsMember({"rk4", "euler"}));
    sub->add_option("--threads", threads, "sweep worker threads");
  };
  auto* validate = app.add_subcommand("validate", "check observer parameters");
  add_common(validate, true);
  auto* simulate = app.add_subcommand("simulate", "time-domain simulation");
  add_common(simulate, true);
  auto* sweep = app.add_subcommand("sweep", "frequency-sweep identification");
  add_common(sweep, true);
  auto* reproduce = app.add_subcommand("reproduce", "run a fig1..fig6 scenario");
  add_common(reproduce, false);
  reproduce->add_option("--scenario,scenario", scenario, "fig1..fig6")
      ->required()
      ->check(CLI::IsMember(scenario_names()));
  reproduce->add_flag("--print-config", print_config,
                      "print the expanded config instead of running it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadConfig;
  }

  RunConfig cfg;
  try {
    if (reproduce->parsed()) {
      cfg = scenario_config(scenario);
    } else {
      cfg = load_run_config(config_path);
      if (validate->parsed()) cfg.command = Command::validate;
      if (simulate->parsed()) cfg.command = Command::simulate;
      if (sweep->parsed()) cfg.command = Command::sweep;
    }
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (!format.empty()) cfg.format = parse_format(format);
    if (!method.empty()) {
      cfg.sim.method = parse_method(method);
      cfg.sweep.method = cfg.sim.method;
    }
    if (discard) cfg.sweep.discard_fraction = *discard;
    if (threads) cfg.sweep.threads = *threads;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kBadConfig;
  }

  if (print_config) {
    out << to_json(cfg).dump(2) << "\n";
    return kOk;
  }
  return run(cfg, out, err);
}

}  // namespace dint::cli
