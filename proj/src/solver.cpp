#include "dint/solver.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "dint/errors.hpp"
#include "dint/format.hpp"

namespace dint {

namespace {

ObserverState axpy(const ObserverState& x, double h, const ObserverState& d) {
  return {x.x1 + h * d.x1, x.x2 + h * d.x2, x.x3 + h * d.x3};
}

bool finite(const ObserverState& s) {
  return std::isfinite(s.x1) && std::isfinite(s.x2) && std::isfinite(s.x3);
}

}  // namespace

const char* to_string(Method m) noexcept {
  return m == Method::rk4 ? "rk4" : "euler";
}

Method parse_method(const std::string& name) {
  if (name == "rk4") return Method::rk4;
  if (name == "euler") return Method::euler;
  throw ConfigError("unknown integration method '" + name + "'");
}

void check_config(const ObserverParams& p, const SimConfig& cfg) {
  if (!(cfg.step_h > 0.0) || !std::isfinite(cfg.step_h)) {
    throw ConfigError("step_h must be > 0");
  }
  if (!(cfg.duration > 0.0) || !std::isfinite(cfg.duration)) {
    throw ConfigError("duration must be > 0");
  }
  if (cfg.record_stride < 1) throw ConfigError("record_stride must be >= 1");
  const double stiffness = cfg.step_h * p.k3() * p.inv_eps4();
  if (!(stiffness < kStabilityLimit)) {
    throw ConfigError("step_h*k3/eps^4 = " + format_g(stiffness) +
                      " exceeds the explicit-method limit 2");
  }
}

std::size_t step_count(const SimConfig& cfg) {
  return static_cast<std::size_t>(std::llround(cfg.duration / cfg.step_h));
}

ObserverState step(const ObserverParams& p, const ObserverState& x, double t,
                   double h, Method method, const InputFn& input) {
  ObserverState next;
  try {
    if (method == Method::euler) {
      next = axpy(x, h, rhs(p, x, input(t)));
    } else {
      const double half = 0.5 * h;
      const double a_mid = input(t + half);
      const ObserverState s1 = rhs(p, x, input(t));
      const ObserverState s2 = rhs(p, axpy(x, half, s1), a_mid);
      const ObserverState s3 = rhs(p, axpy(x, half, s2), a_mid);
      const ObserverState s4 = rhs(p, axpy(x, h, s3), input(t + h));
      const double w = h / 6.0;
      next = {x.x1 + w * (s1.x1 + 2.0 * s2.x1 + 2.0 * s3.x1 + s4.x1),
              x.x2 + w * (s1.x2 + 2.0 * s2.x2 + 2.0 * s3.x2 + s4.x2),
              x.x3 + w * (s1.x3 + 2.0 * s2.x3 + 2.0 * s3.x3 + s4.x3)};
    }
  } catch (const DivergedState&) {
    throw DivergedState(t);
  }
  if (!finite(next)) throw DivergedState(t + h);
  return next;
}

Trajectory simulate(const ObserverParams& p, const SignalSpec& spec,
                    const SimConfig& cfg) {
  require_valid(p);
  check_config(p, cfg);
  check_signal(spec);

  const std::size_t steps = step_count(cfg);
  const std::size_t stride = cfg.record_stride;
  const std::size_t records = steps / stride + 1;
  const bool truth = has_truth(spec);

  Trajectory traj;
  traj.times.reserve(records);
  traj.states.reserve(records);
  traj.inputs.reserve(records);
  if (truth) {
    traj.truths.reserve(records);
    traj.errors.reserve(records);
  }

  const InputFn input = [&spec](double t) { return eval_input(spec, t); };
  auto record = [&](std::size_t j, const ObserverState& x) {
    const double t = static_cast<double>(j * stride) * cfg.step_h;
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.inputs.push_back(input(t));
    if (truth) {
      const SignalTruth a = eval_truth(spec, t);
      traj.truths.push_back(a);
      traj.errors.push_back({x.x1 - a.a1, x.x2 - a.a2, x.x3 - a.a3});
    }
  };

  ObserverState x = cfg.initial_state;
  if (!finite(x)) throw DivergedState(0.0);
  record(0, x);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * cfg.step_h;
    x = step(p, x, t, cfg.step_h, cfg.method, input);
    if ((k + 1) % stride == 0) record((k + 1) / stride, x);
  }
  return traj;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,x1,x2,x3,a,a1,a2,a3,e1,e2,e3\n";
  for (std::size_t j = 0; j < traj.size(); ++j) {
    const auto& x = traj.states[j];
    os << format_sci(traj.times[j]) << ',' << format_sci(x.x1) << ','
       << format_sci(x.x2) << ',' << format_sci(x.x3) << ','
       << format_sci(traj.inputs[j]);
    if (traj.has_truth()) {
      const auto& a = traj.truths[j];
      const auto& e = traj.errors[j];
      os << ',' << format_sci(a.a1) << ',' << format_sci(a.a2) << ','
         << format_sci(a.a3) << ',' << format_sci(e.a1) << ','
         << format_sci(e.a2) << ',' << format_sci(e.a3);
    } else {
      os << ",,,,,,";
    }
    os << '\n';
  }
}

}  // namespace dint
