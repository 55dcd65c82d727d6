#pragma once

#include <complex>

#include "dint/observers.hpp"

namespace dint {

/// Exact frequency response of one linear-observer channel.
struct TransferEval {
  int channel = 3;
  double omega = 0.0;
  std::complex<double> value;
  double gain = 0.0;
  double gain_db = 0.0;  // -inf when gain == 0
  double phase = 0.0;    // arg(value), in (-pi, pi]
};

/// X_j(s)/A(s) = k3 s^(j-1) / (eps^4 s^3 + k3 s^2 + k2 eps^2 s + k1 eps)
/// at s = i*omega. Channel 1 is the double-integral estimate, 2 the onefold
/// integral, 3 the tracked signal.
///
/// Throws DomainError for a nonlinear observer (alpha3 < 1) or a bad channel,
/// SingularDenominator if the denominator vanishes.
TransferEval transfer_eval(const ObserverParams& p, int channel, double omega);

/// (i*omega)^(j-3): the ideal double integrator, integrator and identity.
/// Throws SingularAtDC for omega = 0 on channels 1 and 2.
std::complex<double> limit_transfer(int channel, double omega);

/// Routh-Hurwitz test for the monic cubic s^3 + c2 s^2 + c1 s + c0.
/// Marginal cases are rejected.
bool is_hurwitz_cubic(double c2, double c1, double c0) noexcept;

enum class CutoffReference {
  /// Drop measured from the channel's largest gain inside the bracket.
  peak,
  /// Drop measured from the ideal response (i*omega)^(j-3); the result is
  /// the upper edge of the band where |H_j| stays within drop_db of it.
  ideal,
};

struct CutoffOptions {
  double drop_db = 3.0;
  CutoffReference reference = CutoffReference::peak;
  double search_low = 1e-3;  // rad/s
  double search_high = 1e5;  // rad/s
};

/// Frequency at which the channel gain first falls drop_db below the
/// reference level, searching upward from the peak (or, for the ideal
/// reference, downward from the top of the bracket). Located on a log grid
/// and refined by bisection.
///
/// With the default peak reference the lightly damped low-frequency mode of
/// the linear observer usually dominates the peak, so the result sits just
/// above that resonance rather than at the high-frequency roll-off.
///
/// Throws NotFound if no crossing lies in the bracket, DomainError if
/// drop_db <= 0 or the bracket is empty.
double cutoff_frequency(const ObserverParams& p, int channel,
                        const CutoffOptions& options = {});

}  // namespace dint
