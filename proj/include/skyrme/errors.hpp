#pragma once

#include <stdexcept>
#include <string>

namespace skyrme {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative method (quadrature, integrator, eigensolver, minimizer)
/// did not meet its tolerance within budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The supplied interval does not enclose a minimum.
class BracketError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// Numerical trajectory contradicts the behaviour predicted by the sign of C.
class ClassificationError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

}  // namespace skyrme
