#pragma once

#include <stdexcept>
#include <string>

namespace dtl {

// Domain errors: precondition violations, malformed inputs, refused work.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two scalars or points from different quadratic fields were combined.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

// An internal invariant failed. Reported, never swallowed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// Bad command-line usage (exit code 2 in the CLI).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dtl
