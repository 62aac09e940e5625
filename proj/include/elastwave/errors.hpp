#pragma once

#include <stdexcept>
#include <string>

namespace elastwave {

/// Input violates a documented precondition (bad constants, zero direction, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Material file could not be parsed against the schema.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Explicitly listed constants contradict the required index symmetries.
class SymmetryError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Second-order moduli are not positive definite on symmetric tensors.
class DefinitenessError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A numerical procedure failed or was refused (singular solve, NaN, CFL).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace elastwave
