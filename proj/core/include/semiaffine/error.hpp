#pragma once

#include <stdexcept>
#include <string>

namespace semiaffine {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called with inputs outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure stopped before reaching its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// No stationary probability measure exists: the Lyapunov exponent is >= 0.
class LyapunovSignError : public PreconditionError {
 public:
  LyapunovSignError(const std::string& what, double exponent)
      : PreconditionError(what), exponent_(exponent) {}

  double exponent() const noexcept { return exponent_; }

 private:
  double exponent_;
};

}  // namespace semiaffine
