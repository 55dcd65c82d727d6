#include "dint/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>

#include "dint/errors.hpp"
#include "dint/format.hpp"

namespace dint {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!keys.count(item.key())) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

double get_number(const json& obj, const char* key, const std::string& where,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) {
    throw ConfigError(where + "." + key + " must be a number");
  }
  return v.get<double>();
}

std::size_t get_count(const json& obj, const char* key,
                      const std::string& where, std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(where + "." + key + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string get_string(const json& obj, const char* key,
                       const std::string& where, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + " must be a string");
  return v.get<std::string>();
}

ObserverMode parse_mode(const std::string& name) {
  if (name == "linear") return ObserverMode::linear;
  if (name == "nonlinear") return ObserverMode::nonlinear;
  throw ConfigError("unknown observer mode '" + name + "'");
}

Command parse_command(const std::string& name) {
  if (name == "validate") return Command::validate;
  if (name == "simulate") return Command::simulate;
  if (name == "sweep") return Command::sweep;
  if (name == "reproduce") return Command::reproduce;
  throw ConfigError("unknown command '" + name + "'");
}

SignalKind parse_kind(const std::string& name) {
  if (name == "sinusoid") return SignalKind::sinusoid;
  if (name == "paper_reference") return SignalKind::paper_reference;
  if (name == "composite") return SignalKind::composite;
  throw ConfigError("unknown signal kind '" + name + "'");
}

const char* to_string(SignalKind k) {
  switch (k) {
    case SignalKind::sinusoid:
      return "sinusoid";
    case SignalKind::paper_reference:
      return "paper_reference";
    case SignalKind::composite:
      return "composite";
  }
  return "";
}

PhaseKind parse_phase(const std::string& name) {
  if (name == "sine") return PhaseKind::sine;
  if (name == "cosine") return PhaseKind::cosine;
  throw ConfigError("unknown noise phase '" + name + "'");
}

ParamsSource parse_params(const json& obj) {
  const std::string where = "params";
  check_keys(obj, where, {"k1", "k2", "k3", "R", "alpha3", "mode"});
  ParamsSource p;
  p.k1 = get_number(obj, "k1", where, p.k1);
  p.k2 = get_number(obj, "k2", where, p.k2);
  p.k3 = get_number(obj, "k3", where, p.k3);
  p.r = get_number(obj, "R", where, p.r);
  p.alpha3 = get_number(obj, "alpha3", where, p.alpha3);
  p.mode = parse_mode(get_string(obj, "mode", where, "linear"));
  return p;
}

SignalSpec parse_signal(const json& obj) {
  const std::string where = "signal";
  check_keys(obj, where, {"kind", "amplitude", "omega", "noise"});
  SignalSpec s;
  s.kind = parse_kind(get_string(obj, "kind", where, "sinusoid"));
  s.amplitude = get_number(obj, "amplitude", where, 0.0);
  s.omega = get_number(obj, "omega", where, 0.0);
  if (obj.contains("noise")) {
    const auto& list = obj.at("noise");
    if (!list.is_array()) throw ConfigError("signal.noise must be an array");
    for (const auto& term : list) {
      check_keys(term, "signal.noise[]", {"amp", "omega", "phase"});
      s.noise.push_back({get_number(term, "amp", "signal.noise[]", 0.0),
                         get_number(term, "omega", "signal.noise[]", 0.0),
                         parse_phase(get_string(term, "phase",
                                                "signal.noise[]", "sine"))});
    }
  }
  try {
    check_signal(s);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return s;
}

TimeWindow parse_window(const json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number()) {
    throw ConfigError("metric window must be [start, end]");
  }
  const TimeWindow w{v[0].get<double>(), v[1].get<double>()};
  if (!(w.end >= w.start)) throw ConfigError("metric window end < start");
  return w;
}

void parse_sim(const json& obj, RunConfig& cfg) {
  const std::string where = "sim";
  check_keys(obj, where,
             {"step_h", "duration", "initial_state", "method", "record_stride",
              "metric_windows", "settle_threshold"});
  SimConfig& sim = cfg.sim;
  sim.step_h = get_number(obj, "step_h", where, sim.step_h);
  sim.duration = get_number(obj, "duration", where, sim.duration);
  if (obj.contains("initial_state")) {
    const auto& v = obj.at("initial_state");
    if (!v.is_array() || v.size() != 3) {
      throw ConfigError("sim.initial_state must be [x1, x2, x3]");
    }
    for (const auto& x : v) {
      if (!x.is_number()) throw ConfigError("sim.initial_state must be numeric");
    }
    sim.initial_state = {v[0].get<double>(), v[1].get<double>(),
                         v[2].get<double>()};
  }
  sim.method = parse_method(get_string(obj, "method", where, "rk4"));
  sim.record_stride = get_count(obj, "record_stride", where, sim.record_stride);
  if (obj.contains("metric_windows")) {
    const auto& list = obj.at("metric_windows");
    if (!list.is_array()) throw ConfigError("sim.metric_windows must be an array");
    for (const auto& w : list) cfg.metric_windows.push_back(parse_window(w));
  }
  cfg.settle_threshold =
      get_number(obj, "settle_threshold", where, cfg.settle_threshold);
}

std::string default_label(const SweepCase& c) {
  return std::string("R") + format_g(c.r) + "_a" + format_g(c.alpha3) + "_A" +
         format_g(c.amplitude) + "_" + to_string(c.mode);
}

void parse_sweep(const json& obj, RunConfig& cfg) {
  const std::string where = "sweep";
  check_keys(obj, where,
             {"freqs_hz", "grid", "amplitude", "step_h", "samples",
              "discard_fraction", "channels", "method", "start", "threads",
              "cases"});
  SweepConfig& sw = cfg.sweep;
  if (obj.contains("freqs_hz") && obj.contains("grid")) {
    throw ConfigError("sweep.freqs_hz and sweep.grid are exclusive");
  }
  if (obj.contains("freqs_hz")) {
    const auto& list = obj.at("freqs_hz");
    if (!list.is_array()) throw ConfigError("sweep.freqs_hz must be an array");
    sw.freqs_hz.clear();
    for (const auto& f : list) {
      if (!f.is_number()) throw ConfigError("sweep.freqs_hz must be numeric");
      sw.freqs_hz.push_back(f.get<double>());
    }
  }
  if (obj.contains("grid")) {
    const auto& g = obj.at("grid");
    check_keys(g, "sweep.grid", {"start", "step", "stop"});
    sw.freqs_hz = frequency_grid(get_number(g, "start", "sweep.grid", 0.1),
                                 get_number(g, "step", "sweep.grid", 0.5),
                                 get_number(g, "stop", "sweep.grid", 100.0));
  }
  sw.amplitude = get_number(obj, "amplitude", where, sw.amplitude);
  sw.step_h = get_number(obj, "step_h", where, sw.step_h);
  sw.samples = get_count(obj, "samples", where, sw.samples);
  sw.discard_fraction =
      get_number(obj, "discard_fraction", where, sw.discard_fraction);
  if (obj.contains("channels")) {
    const auto& list = obj.at("channels");
    if (!list.is_array()) throw ConfigError("sweep.channels must be an array");
    sw.channels.clear();
    for (const auto& c : list) {
      if (!c.is_number_integer()) throw ConfigError("sweep.channels must be integers");
      sw.channels.push_back(c.get<int>());
    }
  }
  sw.method = parse_method(get_string(obj, "method", where, "rk4"));
  sw.start = parse_sweep_start(get_string(obj, "start", where, "integral_matched"));
  sw.threads = static_cast<unsigned>(get_count(obj, "threads", where, sw.threads));

  if (obj.contains("cases")) {
    const auto& list = obj.at("cases");
    if (!list.is_array()) throw ConfigError("sweep.cases must be an array");
    for (const auto& item : list) {
      const std::string w = "sweep.cases[]";
      check_keys(item, w, {"label", "R", "alpha3", "mode", "amplitude"});
      SweepCase c;
      c.r = get_number(item, "R", w, cfg.params.r);
      c.alpha3 = get_number(item, "alpha3", w, cfg.params.alpha3);
      c.mode = parse_mode(get_string(item, "mode", w, to_string(cfg.params.mode)));
      c.amplitude = get_number(item, "amplitude", w, sw.amplitude);
      c.label = get_string(item, "label", w, default_label(c));
      cfg.sweep_cases.push_back(c);
    }
  }
}

SweepCase case_from(const ParamsSource& p, double amplitude) {
  SweepCase c{"", p.r, p.alpha3, p.mode, amplitude};
  c.label = default_label(c);
  return c;
}

}  // namespace

ObserverParams ParamsSource::build() const {
  return ObserverParams::from_r({k1, k2, k3}, r, alpha3, mode);
}

const char* to_string(Command c) noexcept {
  switch (c) {
    case Command::validate:
      return "validate";
    case Command::simulate:
      return "simulate";
    case Command::sweep:
      return "sweep";
    case Command::reproduce:
      return "reproduce";
  }
  return "";
}

const char* to_string(ObserverMode m) noexcept {
  return m == ObserverMode::linear ? "linear" : "nonlinear";
}

const char* to_string(OutputFormat f) noexcept {
  return f == OutputFormat::csv ? "csv" : "json";
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("unknown output format '" + name + "'");
}

RunConfig parse_run_config(const json& doc) {
  check_keys(doc, "config",
             {"command", "params", "signal", "sim", "sweep", "output_dir",
              "format"});
  RunConfig cfg;
  cfg.command = parse_command(get_string(doc, "command", "config", "validate"));
  if (doc.contains("params")) cfg.params = parse_params(doc.at("params"));
  if (doc.contains("signal")) cfg.signal = parse_signal(doc.at("signal"));
  if (doc.contains("sim")) parse_sim(doc.at("sim"), cfg);
  if (doc.contains("sweep")) parse_sweep(doc.at("sweep"), cfg);
  cfg.output_dir = get_string(doc, "output_dir", "config", cfg.output_dir);
  cfg.format = parse_format(get_string(doc, "format", "config", "csv"));
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return parse_run_config(doc);
}

json to_json(const ObserverParams& p) {
  return {{"k1", p.k1()},         {"k2", p.k2()},
          {"k3", p.k3()},         {"epsilon", p.epsilon()},
          {"alpha1", p.alpha1()}, {"alpha2", p.alpha2()},
          {"alpha3", p.alpha3()}, {"mode", to_string(p.mode())}};
}

json to_json(const SignalSpec& spec) {
  json noise = json::array();
  for (const auto& t : spec.noise) {
    noise.push_back({{"amp", t.amplitude},
                     {"omega", t.omega},
                     {"phase", t.phase == PhaseKind::sine ? "sine" : "cosine"}});
  }
  return {{"kind", to_string(spec.kind)},
          {"amplitude", spec.amplitude},
          {"omega", spec.omega},
          {"noise", noise}};
}

json to_json(const RunConfig& cfg) {
  json windows = json::array();
  for (const auto& w : cfg.metric_windows) windows.push_back({w.start, w.end});
  json cases = json::array();
  for (const auto& c : cfg.sweep_cases) {
    cases.push_back({{"label", c.label},
                     {"R", c.r},
                     {"alpha3", c.alpha3},
                     {"mode", to_string(c.mode)},
                     {"amplitude", c.amplitude}});
  }
  const auto& sw = cfg.sweep;
  // threads is an execution detail and does not change any output.
  return {
      {"command", to_string(cfg.command)},
      {"params",
       {{"k1", cfg.params.k1},
        {"k2", cfg.params.k2},
        {"k3", cfg.params.k3},
        {"R", cfg.params.r},
        {"alpha3", cfg.params.alpha3},
        {"mode", to_string(cfg.params.mode)}}},
      {"signal", to_json(cfg.signal)},
      {"sim",
       {{"step_h", cfg.sim.step_h},
        {"duration", cfg.sim.duration},
        {"initial_state",
         {cfg.sim.initial_state.x1, cfg.sim.initial_state.x2,
          cfg.sim.initial_state.x3}},
        {"method", to_string(cfg.sim.method)},
        {"record_stride", cfg.sim.record_stride},
        {"metric_windows", windows},
        {"settle_threshold", cfg.settle_threshold}}},
      {"sweep",
       {{"freqs_hz", sw.freqs_hz},
        {"amplitude", sw.amplitude},
        {"step_h", sw.step_h},
        {"samples", sw.samples},
        {"discard_fraction", sw.discard_fraction},
        {"channels", sw.channels},
        {"method", to_string(sw.method)},
        {"start", to_string(sw.start)},
        {"cases", cases}}},
      {"output_dir", cfg.output_dir},
      {"format", to_string(cfg.format)}};
}

std::vector<SweepCase> effective_cases(const RunConfig& cfg) {
  if (!cfg.sweep_cases.empty()) return cfg.sweep_cases;
  return {case_from(cfg.params, cfg.sweep.amplitude)};
}

std::vector<std::string> scenario_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"};
}

RunConfig scenario_config(const std::string& name) {
  RunConfig cfg;
  cfg.params = {0.1, 0.1, 1.0, 5.0, 0.3, ObserverMode::nonlinear};
  cfg.output_dir = name;

  if (name == "fig1" || name == "fig2") {
    cfg.command = Command::sweep;
    cfg.sweep = SweepConfig{};
    if (name == "fig1") {
      for (double alpha : {0.3, 0.5, 1.0}) {
        for (double r : {3.0, 4.0, 5.0}) {
          const ObserverMode mode =
              alpha == 1.0 ? ObserverMode::linear : ObserverMode::nonlinear;
          SweepCase c{"", r, alpha, mode, 1.0};
          c.label = default_label(c);
          cfg.sweep_cases.push_back(c);
        }
      }
    } else {
      cfg.params.r = 3.0;
      for (double amp : {5.0, 1.0, 0.5}) {
        SweepCase c{"", 3.0, 0.3, ObserverMode::nonlinear, amp};
        c.label = default_label(c);
        cfg.sweep_cases.push_back(c);
      }
    }
    return cfg;
  }

  const bool nonlinear = name == "fig3" || name == "fig4";
  const bool long_run = name == "fig4" || name == "fig6";
  if (!nonlinear && name != "fig5" && name != "fig6") {
    throw ConfigError("unknown scenario '" + name + "'");
  }
  cfg.command = Command::simulate;
  if (!nonlinear) {
    cfg.params.alpha3 = 1.0;
    cfg.params.mode = ObserverMode::linear;
  }
  cfg.signal = SignalSpec::noisy_reference();
  cfg.sim.step_h = 1e-3;
  cfg.sim.method = Method::rk4;
  cfg.sim.initial_state = {0.0, 1.0, 0.0};
  if (long_run) {
    cfg.sim.duration = 2000.0;
    cfg.sim.record_stride = 100;
    cfg.metric_windows = {{10.0, 20.0}, {1800.0, 2000.0}};
  } else {
    cfg.sim.duration = 20.0;
    cfg.sim.record_stride = 1;
    cfg.metric_windows = {{0.0, 20.0}, {10.0, 20.0}};
  }
  return cfg;
}

}  // namespace dint
