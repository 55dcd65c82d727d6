#include "dint/observers.hpp"

#include <cmath>
#include <limits>

#include "dint/errors.hpp"
#include "dint/format.hpp"

namespace dint {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool alpha_in_range(double alpha3) { return alpha3 > 0.0 && alpha3 <= 1.0; }

bool finite(const ObserverState& s) {
  return std::isfinite(s.x1) && std::isfinite(s.x2) && std::isfinite(s.x3);
}

}  // namespace

Exponents derive_alphas(double alpha3) {
  if (!alpha_in_range(alpha3)) {
    throw DomainError("alpha3 must lie in (0, 1], got " +
                      format_g(alpha3));
  }
  return {alpha3 / (3.0 - 2.0 * alpha3), alpha3 / (2.0 - alpha3)};
}

ObserverParams::ObserverParams(Gains gains, double epsilon, double alpha3,
                               ObserverMode mode)
    : gains_(gains),
      epsilon_(epsilon),
      alpha3_(alpha3),
      exps_{kNaN, kNaN},
      mode_(mode),
      eps2_(epsilon * epsilon),
      inv_eps4_(1.0 / (eps2_ * eps2_)) {
  if (alpha_in_range(alpha3)) exps_ = derive_alphas(alpha3);
}

ObserverParams ObserverParams::linear(Gains gains, double epsilon) {
  return {gains, epsilon, 1.0, ObserverMode::linear};
}

ObserverParams ObserverParams::nonlinear(Gains gains, double epsilon,
                                         double alpha3) {
  return {gains, epsilon, alpha3, ObserverMode::nonlinear};
}

ObserverParams ObserverParams::from_r(Gains gains, double r, double alpha3,
                                      ObserverMode mode) {
  return {gains, 1.0 / r, alpha3, mode};
}

bool ObserverParams::is_effectively_linear() const noexcept {
  return mode_ == ObserverMode::linear || alpha3_ == 1.0;
}

const char* to_string(Constraint c) noexcept {
  switch (c) {
    case Constraint::positivity:
      return "positivity";
    case Constraint::epsilon_range:
      return "epsilon range";
    case Constraint::alpha_range:
      return "alpha range";
    case Constraint::gain_inequality:
      return "gain inequality";
  }
  return "unknown";
}

bool ValidationReport::violates(Constraint c) const noexcept {
  for (const auto& v : violations) {
    if (v.constraint == c) return true;
  }
  return false;
}

ValidationReport validate_params(const ObserverParams& p,
                                 const ValidationOptions& options) {
  ValidationReport report{{}, kNaN};
  auto& out = report.violations;

  if (!(p.k1() > 0.0)) {
    out.push_back({Constraint::positivity,
                   "k1 = " + format_g(p.k1()) + " must be > 0", 0.0});
  }
  if (!(p.k3() > 0.0)) {
    out.push_back({Constraint::positivity,
                   "k3 = " + format_g(p.k3()) + " must be > 0", 0.0});
  }
  const double eps = p.epsilon();
  if (!(eps >= options.epsilon_floor && eps < 1.0)) {
    out.push_back({Constraint::epsilon_range,
                   "epsilon = " + format_g(eps) + " must lie in [" +
                       format_g(options.epsilon_floor) + ", 1)",
                   options.epsilon_floor});
  }
  const bool alpha_ok = alpha_in_range(p.alpha3());
  if (!alpha_ok) {
    out.push_back({Constraint::alpha_range,
                   "alpha3 = " + format_g(p.alpha3()) +
                       " must lie in (0, 1]",
                   1.0});
  }

  const double exponent =
      p.mode() == ObserverMode::linear ? 3.0 : 3.0 * p.alpha3();
  if (p.k3() != 0.0 && eps > 0.0 &&
      (alpha_ok || p.mode() == ObserverMode::linear)) {
    report.gain_threshold = std::pow(eps, exponent) * p.k1() / p.k3();
  }
  // An undefined threshold is already explained by an earlier violation.
  if (!std::isnan(report.gain_threshold) &&
      !(p.k2() > report.gain_threshold)) {
    out.push_back({Constraint::gain_inequality,
                   "k2 = " + format_g(p.k2()) + " must exceed " +
                       format_g(report.gain_threshold),
                   report.gain_threshold});
  }
  return report;
}

void require_valid(const ObserverParams& p, const ValidationOptions& options) {
  const auto report = validate_params(p, options);
  if (report.ok()) return;
  std::string msg = "invalid observer parameters:";
  for (const auto& v : report.violations) {
    msg += std::string(" [") + to_string(v.constraint) + "] " + v.message + ";";
  }
  throw DomainError(msg);
}

double power_sign(double x, double alpha) noexcept {
  if (x == 0.0) return 0.0;
  if (alpha == 1.0) return x;
  const double mag = std::pow(std::abs(x), alpha);
  return x > 0.0 ? mag : -mag;
}

ObserverState rhs(const ObserverParams& p, const ObserverState& s,
                  double a_t) {
  if (!finite(s) || !std::isfinite(a_t)) throw DivergedState(kNaN);

  const double eps = p.epsilon();
  const double tracking = s.x3 - a_t;
  double feedback;
  // Both branches share one expression shape so that alpha3 = 1 reproduces
  // the linear result bit for bit.
  if (p.mode() == ObserverMode::linear) {
    feedback = p.k1() * (eps * s.x1) + p.k2() * (p.eps2() * s.x2) +
               p.k3() * tracking;
  } else {
    feedback = p.k1() * power_sign(eps * s.x1, p.alpha1()) +
               p.k2() * power_sign(p.eps2() * s.x2, p.alpha2()) +
               p.k3() * power_sign(tracking, p.alpha3());
  }
  ObserverState d{s.x2, s.x3, -feedback * p.inv_eps4()};
  if (!std::isfinite(d.x3)) throw DivergedState(kNaN);
  return d;
}

}  // namespace dint
