#include "dint/signals.hpp"

#include <cmath>

#include "dint/errors.hpp"

namespace dint {

SignalSpec SignalSpec::sinusoid(double amplitude, double omega) {
  return {SignalKind::sinusoid, amplitude, omega, {}};
}

SignalSpec SignalSpec::reference() {
  return {SignalKind::paper_reference, 0.0, 0.0, {}};
}

SignalSpec SignalSpec::noisy_reference() {
  SignalSpec spec = reference();
  spec.noise = standard_noise();
  return spec;
}

std::vector<NoiseTerm> SignalSpec::standard_noise() {
  return {{0.1, 10.0, PhaseKind::sine},
          {0.1, 10.0, PhaseKind::cosine},
          {0.05, 50.0, PhaseKind::sine},
          {0.05, 50.0, PhaseKind::cosine}};
}

void check_signal(const SignalSpec& spec) {
  if (!(spec.amplitude >= 0.0) || !(spec.omega >= 0.0)) {
    throw DomainError("signal amplitude and angular rate must be >= 0");
  }
  for (const auto& term : spec.noise) {
    if (!(term.amplitude >= 0.0) || !(term.omega >= 0.0)) {
      throw DomainError("noise amplitude and angular rate must be >= 0");
    }
  }
}

namespace {

double clean_signal(const SignalSpec& spec, double t) {
  switch (spec.kind) {
    case SignalKind::sinusoid:
      return spec.amplitude * std::sin(spec.omega * t);
    case SignalKind::paper_reference:
      return -0.1 * kReferenceRate * kReferenceRate *
             std::sin(kReferenceRate * t);
    case SignalKind::composite:
      return 0.0;
  }
  return 0.0;
}

}  // namespace

double eval_input(const SignalSpec& spec, double t) {
  double value = clean_signal(spec, t);
  for (const auto& term : spec.noise) {
    const double arg = term.omega * t;
    value += term.amplitude *
             (term.phase == PhaseKind::sine ? std::sin(arg) : std::cos(arg));
  }
  return value;
}

bool has_truth(const SignalSpec& spec) noexcept {
  return spec.kind != SignalKind::composite;
}

SignalTruth eval_truth(const SignalSpec& spec, double t) {
  switch (spec.kind) {
    case SignalKind::sinusoid: {
      const double amp = spec.amplitude;
      const double w = spec.omega;
      if (w == 0.0) return {};
      const double wt = w * t;
      return {amp * (t / w - std::sin(wt) / (w * w)),
              amp * (1.0 - std::cos(wt)) / w, amp * std::sin(wt)};
    }
    case SignalKind::paper_reference: {
      const double w = kReferenceRate;
      return {0.1 * std::sin(w * t), 0.1 * w * std::cos(w * t),
              -0.1 * w * w * std::sin(w * t)};
    }
    case SignalKind::composite:
      break;
  }
  throw UnsupportedTruth("composite signals have no closed-form integrals");
}

}  // namespace dint
