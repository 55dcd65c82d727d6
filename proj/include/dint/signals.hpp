#pragma once

#include <vector>

namespace dint {

enum class SignalKind { sinusoid, paper_reference, composite };
enum class PhaseKind { sine, cosine };

struct NoiseTerm {
  double amplitude = 0.0;
  double omega = 0.0;  // rad/s
  PhaseKind phase = PhaseKind::sine;
};

/// Deterministic input signal: a base waveform plus a sum of sinusoidal
/// noise terms.
///
///  - sinusoid:        amplitude * sin(omega * t)
///  - paper_reference: -0.1 * 3.14^2 * sin(3.14 t); amplitude/omega unused
///  - composite:       no base waveform, only the noise terms
struct SignalSpec {
  SignalKind kind = SignalKind::sinusoid;
  double amplitude = 0.0;
  double omega = 0.0;
  std::vector<NoiseTerm> noise;

  static SignalSpec sinusoid(double amplitude, double omega);
  /// The clean reference waveform used in the time-domain scenarios.
  static SignalSpec reference();
  /// Reference waveform corrupted by standard_noise().
  static SignalSpec noisy_reference();
  /// 0.1 sin(10t) + 0.1 cos(10t) + 0.05 sin(50t) + 0.05 cos(50t)
  static std::vector<NoiseTerm> standard_noise();
};

/// The three ground-truth values at time t: double integral, onefold
/// integral and the clean signal itself.
struct SignalTruth {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
};

/// Literal constant of the reference waveform. Deliberately not pi: the
/// closed-form integrals are printed for this value.
inline constexpr double kReferenceRate = 3.14;

/// Throws DomainError when an amplitude or rate is negative.
void check_signal(const SignalSpec& spec);

/// Clean signal plus every noise term at time t.
double eval_input(const SignalSpec& spec, double t);

bool has_truth(const SignalSpec& spec) noexcept;

/// Closed-form integrals of the clean signal (noise excluded). Sinusoids use
/// integrals taken from zero; the reference waveform uses its printed
/// antiderivatives, whose onefold integral is 0.314 at t=0.
/// Throws UnsupportedTruth for composite signals.
SignalTruth eval_truth(const SignalSpec& spec, double t);

}  // namespace dint
