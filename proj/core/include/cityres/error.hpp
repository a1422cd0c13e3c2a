#pragma once

#include <stdexcept>
#include <string>

namespace cityres {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: malformed geometry, non-positive parameters, bad config.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a mathematical function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Base for failures of a numerical procedure on otherwise valid input.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Kernel evaluated at a coincident point or lattice point.
class SingularPointError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A Rayleigh mode gamma_m vanishes; the periodic problem is not uniquely solvable.
class WoodAnomalyError : public NumericalError {
 public:
  WoodAnomalyError(const std::string& what, int mode)
      : NumericalError(what), mode_(mode) {}
  int mode() const noexcept { return mode_; }

 private:
  int mode_;
};

/// A series hit its term cap before reaching the requested tolerance.
class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The collocation matrix is numerically singular.
class SingularSystemError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// p_j(xi^2) vanishes: the building resonates on its own and eta is undefined.
class BuildingResonanceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An iterative root finder did not converge.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : NumericalError(what), iterations_(iterations), residual_(residual) {}
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

}  // namespace cityres
