// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace boolperc {

/// Precondition violated by a caller (bad dimension, negative radius, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Root bracket does not change sign.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative method hit its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace boolperc
