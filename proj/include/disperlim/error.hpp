#pragma once

#include <stdexcept>
#include <string>

namespace disperlim {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: bad grid, parameters, config files, unknown options.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input field violates a structural constraint (e.g. nonzero x1-mean where
/// an x1-antiderivative is required). `norm` is the offending content.
class ConstraintError : public Error {
 public:
  ConstraintError(const std::string& what, double norm) : Error(what), norm_(norm) {}
  double norm() const noexcept { return norm_; }

 private:
  double norm_;
};

/// Failure during a numerical computation.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Positivity of the density was lost (or was never there).
class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An iteration did not reach its tolerance.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : NumericalError(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

/// A monitored norm grew past its guard.
class BlowUpError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace disperlim
