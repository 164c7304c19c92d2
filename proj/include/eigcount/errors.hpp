#pragma once

#include <stdexcept>
#include <string>

namespace eigcount {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Result (or an exact intermediate) does not fit the representable range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An iterative method did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cancellation control failed; the result cannot be trusted.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is degenerate (zero polynomial, identically vanishing form, ...).
/// Happens with probability zero for gaussian inputs; callers resample.
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Monte-Carlo run discarded more samples than its failure budget allows.
class FailureRateExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eigcount
