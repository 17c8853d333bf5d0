#pragma once

#include <stdexcept>
#include <string>

namespace bshm {

/// Malformed or inconsistent input (instance files, generator specs, indices).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A job that no machine type can hold.
class InfeasibleJobError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// An exact search hit its node cap before proving optimality.
class SearchSpaceExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (e.g. passed a non-optimal
/// configuration where an optimal one is required).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bshm
