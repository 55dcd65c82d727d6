#pragma once

#include <stdexcept>
#include <string>

namespace dint {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid simulation, sweep or CLI configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Signal kind has no closed-form integrals.
class UnsupportedTruth : public Error {
 public:
  using Error::Error;
};

/// A state component became NaN or infinite. Carries the simulation time.
class DivergedState : public Error {
 public:
  explicit DivergedState(double time)
      : Error("observer state diverged at t=" + std::to_string(time)),
        time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

class SingularDenominator : public Error {
 public:
  using Error::Error;
};

class SingularAtDC : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

/// Least-squares normal matrix too close to singular.
class IllConditioned : public Error {
 public:
  using Error::Error;
};

}  // namespace dint
