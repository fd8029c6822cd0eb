#pragma once

#include <stdexcept>
#include <string>

namespace curvlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is numerically degenerate (zero-length form, singular metric, ...).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Evaluation point lies outside the chart domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// J fails one of the almost-Hermitian compatibility conditions.
class IncompatibleStructure : public Error {
 public:
  using Error::Error;
};

/// Two routes to the same quantity disagree; indicates a convention bug.
class ConventionMismatch : public Error {
 public:
  using Error::Error;
};

/// The entry does not satisfy the hypothesis an identity is stated under.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// Bad catalog id, parameter or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace curvlab
