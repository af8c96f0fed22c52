#pragma once

#include <stdexcept>
#include <string>

namespace okflow {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed geometry: self-intersection, degenerate edges, endpoints off the boundary.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A point lies outside the domain an operation needs it in.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Kernel evaluated at coincident points.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Inconsistent or unparseable configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A test field violates tangency to the domain boundary.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Flowed curve lost simplicity.
class StepTooLarge : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace okflow
