#pragma once

#include <stdexcept>
#include <string>

namespace fdlap {

/// Argument outside the mathematical domain of an operation (e.g. s outside (0,1)).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inconsistent or unsound configuration (tail mode vs support, window sizes, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A series or iteration that failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature that ran out of subdivisions. Carries the best estimate.
class QuadratureError : public ConvergenceError {
 public:
  QuadratureError(const std::string& what, double estimate, double error_bound)
      : ConvergenceError(what + " (estimate " + std::to_string(estimate) +
                         ", error bound " + std::to_string(error_bound) + ")"),
        estimate_(estimate),
        error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

}  // namespace fdlap
