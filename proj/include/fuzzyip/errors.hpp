#pragma once

#include <stdexcept>
#include <string>

namespace fuzzyip {

/// Precondition or data-shape violation (length mismatch, bad parameter).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an enumeration would exceed the configured box-volume guard.
class GuardLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A nondominated-count oracle returned counts that are not additive.
class OracleInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that cannot be parsed or fails semantic validation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fuzzyip
