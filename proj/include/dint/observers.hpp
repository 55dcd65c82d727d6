#pragma once

#include <string>
#include <vector>

namespace dint {

enum class ObserverMode { nonlinear, linear };

struct Gains {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
};

/// Exponents tied to alpha3 by alpha2 = a3/(2-a3), alpha1 = a3/(3-2*a3).
struct Exponents {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
};

/// Throws DomainError unless alpha3 is in (0, 1].
Exponents derive_alphas(double alpha3);

/// Immutable observer configuration. alpha1 and alpha2 are never supplied by
/// the caller; they are derived from alpha3. Construction does not validate
/// (see validate_params), so out-of-range inputs are representable and
/// reportable. Invalid alpha3 leaves the derived exponents NaN.
class ObserverParams {
 public:
  ObserverParams(Gains gains, double epsilon, double alpha3,
                 ObserverMode mode);

  /// Linear observer (alpha3 = 1).
  static ObserverParams linear(Gains gains, double epsilon);
  static ObserverParams nonlinear(Gains gains, double epsilon, double alpha3);
  /// Same, parameterized by R = 1/epsilon.
  static ObserverParams from_r(Gains gains, double r, double alpha3,
                               ObserverMode mode);

  const Gains& gains() const noexcept { return gains_; }
  double k1() const noexcept { return gains_.k1; }
  double k2() const noexcept { return gains_.k2; }
  double k3() const noexcept { return gains_.k3; }
  double epsilon() const noexcept { return epsilon_; }
  double alpha1() const noexcept { return exps_.alpha1; }
  double alpha2() const noexcept { return exps_.alpha2; }
  double alpha3() const noexcept { return alpha3_; }
  ObserverMode mode() const noexcept { return mode_; }

  /// True when the dynamics are the linear ones, either by mode or because
  /// alpha3 = 1 collapses the nonlinear form.
  bool is_effectively_linear() const noexcept;

  double eps2() const noexcept { return eps2_; }
  double inv_eps4() const noexcept { return inv_eps4_; }

 private:
  Gains gains_;
  double epsilon_;
  double alpha3_;
  Exponents exps_;
  ObserverMode mode_;
  double eps2_;
  double inv_eps4_;
};

enum class Constraint { positivity, epsilon_range, alpha_range, gain_inequality };

const char* to_string(Constraint c) noexcept;

struct Violation {
  Constraint constraint;
  std::string message;
  double threshold;  // bound the offending value was compared against
};

struct ValidationReport {
  std::vector<Violation> violations;
  /// Lower bound on k2: eps^(3*alpha3)*k1/k3 (nonlinear) or eps^3*k1/k3
  /// (linear). NaN when it cannot be evaluated.
  double gain_threshold;

  bool ok() const noexcept { return violations.empty(); }
  bool violates(Constraint c) const noexcept;
};

struct ValidationOptions {
  /// Keeps 1/eps^4 <= 1e12.
  double epsilon_floor = 1e-3;
};

/// Never throws.
ValidationReport validate_params(const ObserverParams& p,
                                 const ValidationOptions& options = {});

/// Throws DomainError listing the violations if validation fails.
void require_valid(const ObserverParams& p,
                   const ValidationOptions& options = {});

struct ObserverState {
  double x1 = 0.0;  // double-integral estimate
  double x2 = 0.0;  // onefold-integral estimate
  double x3 = 0.0;  // tracks the input

  friend bool operator==(const ObserverState&, const ObserverState&) = default;
};

/// |x|^alpha * sign(x), with sign(0) = 0.
double power_sign(double x, double alpha) noexcept;

/// Time derivative of the observer state for input value a_t. The feedback
/// acts on x1 and x2 directly. Throws DivergedState on non-finite input or
/// output (time reported as NaN; simulate() rethrows with the real time).
ObserverState rhs(const ObserverParams& p, const ObserverState& state,
                  double a_t);

}  // namespace dint
