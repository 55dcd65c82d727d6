#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dint/observers.hpp"
#include "dint/signals.hpp"

namespace dint {

enum class Method { rk4, euler };

const char* to_string(Method m) noexcept;
/// Throws ConfigError for anything but "rk4" or "euler".
Method parse_method(const std::string& name);

struct SimConfig {
  double step_h = 1e-3;
  double duration = 20.0;
  ObserverState initial_state{};
  Method method = Method::rk4;
  std::size_t record_stride = 1;
};

/// Largest accepted step_h * k3 / eps^4.
inline constexpr double kStabilityLimit = 2.0;

/// Throws ConfigError when the config is unusable for these params.
void check_config(const ObserverParams& p, const SimConfig& cfg);

/// Number of integration steps covering cfg.duration.
std::size_t step_count(const SimConfig& cfg);

using InputFn = std::function<double(double)>;

/// One fixed step from t to t+h. RK4 samples the input at t, t+h/2 and t+h.
/// Throws DivergedState (carrying t) on a non-finite result.
ObserverState step(const ObserverParams& p, const ObserverState& state,
                   double t, double h, Method method, const InputFn& input);

struct Trajectory {
  std::vector<double> times;
  std::vector<ObserverState> states;
  std::vector<double> inputs;
  /// Empty when the signal has no closed-form integrals.
  std::vector<SignalTruth> truths;
  /// errors[j] = states[j] - truths[j]; empty without truths.
  std::vector<SignalTruth> errors;

  std::size_t size() const noexcept { return times.size(); }
  bool has_truth() const noexcept { return !truths.empty(); }
};

/// Integrates the observer from t=0 to cfg.duration, recording every
/// record_stride-th step (t=0 included). Recorded times are computed as
/// j*record_stride*step_h so the grid does not drift.
///
/// Throws DomainError for invalid params, ConfigError for a bad config and
/// DivergedState with the time of divergence.
Trajectory simulate(const ObserverParams& p, const SignalSpec& spec,
                    const SimConfig& cfg);

/// CSV with header t,x1,x2,x3,a,a1,a2,a3,e1,e2,e3. Truth and error columns
/// are left empty when unavailable.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace dint
