#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dint/metrics.hpp"
#include "dint/observers.hpp"
#include "dint/signals.hpp"
#include "dint/solver.hpp"
#include "dint/sweep.hpp"

namespace dint {

enum class Command { validate, simulate, sweep, reproduce };
enum class OutputFormat { csv, json };

/// Observer parameters as written in config files: R = 1/epsilon.
struct ParamsSource {
  double k1 = 0.1;
  double k2 = 0.1;
  double k3 = 1.0;
  double r = 5.0;
  double alpha3 = 1.0;
  ObserverMode mode = ObserverMode::linear;

  ObserverParams build() const;
};

/// One curve of a sweep run. Unset fields fall back to the run's params
/// and sweep amplitude.
struct SweepCase {
  std::string label;
  double r = 5.0;
  double alpha3 = 1.0;
  ObserverMode mode = ObserverMode::linear;
  double amplitude = 1.0;
};

struct RunConfig {
  Command command = Command::validate;
  ParamsSource params;
  SignalSpec signal = SignalSpec::noisy_reference();
  SimConfig sim;
  /// RMS error windows reported by simulate; empty means the whole run and
  /// its second half.
  std::vector<TimeWindow> metric_windows;
  double settle_threshold = 0.05;
  SweepConfig sweep;
  std::vector<SweepCase> sweep_cases;
  std::string output_dir = "out";
  OutputFormat format = OutputFormat::csv;
};

const char* to_string(Command c) noexcept;
const char* to_string(ObserverMode m) noexcept;
const char* to_string(OutputFormat f) noexcept;
OutputFormat parse_format(const std::string& name);

/// Strict parser: unknown keys and wrong types raise ConfigError.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

/// Complete, re-parseable echo of the effective configuration.
nlohmann::json to_json(const RunConfig& cfg);
nlohmann::json to_json(const ObserverParams& p);
nlohmann::json to_json(const SignalSpec& spec);

/// Sweep cases to run: sweep_cases, or one case built from params.
std::vector<SweepCase> effective_cases(const RunConfig& cfg);

/// Names accepted by scenario_config.
std::vector<std::string> scenario_names();

/// Expands fig1..fig6 to the explicit simulate or sweep configuration.
/// Throws ConfigError for an unknown name.
RunConfig scenario_config(const std::string& name);

}  // namespace dint
