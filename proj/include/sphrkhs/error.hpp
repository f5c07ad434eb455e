#pragma once

#include <stdexcept>
#include <string>

namespace sphrkhs {

/// Argument outside the mathematical domain of a function (|z| > 1, m > l, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Kernel or algorithm parameter outside its admissible range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Successive quadrature refinements disagree beyond the acceptance threshold.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Gram system is numerically singular.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands that must agree (kernel family, truncation) do not.
class MismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its precondition (e.g. repairing an admissible candidate).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sphrkhs
