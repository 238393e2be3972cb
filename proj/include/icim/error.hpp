#pragma once

#include <stdexcept>
#include <string>

namespace icim {

/// Invalid argument or configuration outside an operation's domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not reach the requested tolerance. Carries the
/// best estimate it did reach so callers can still report partial results.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// A transform was evaluated at or beyond its pole.
class DivergenceError : public std::domain_error {
 public:
  DivergenceError(const std::string& what, double pole)
      : std::domain_error(what), pole_(pole) {}

  double pole() const noexcept { return pole_; }

 private:
  double pole_;
};

/// Requested analytic evaluation exceeds the configured complexity cap.
class ComplexityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user configuration (unknown key, malformed value).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace icim
