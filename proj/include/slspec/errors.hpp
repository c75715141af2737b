// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace slspec {

/// Malformed problem data, bad arguments, violated preconditions on inputs.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An integrator or root finder could not reach its tolerance.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A certificate was requested outside the hypotheses of the result it encodes.
/// Distinct from a certificate that was evaluated and came out invalid.
class HypothesisViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace slspec
