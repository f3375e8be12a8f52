#pragma once

#include <stdexcept>
#include <string>

namespace qdesign {

/// Raised by exact division when the divisor leaves a nonzero remainder.
/// Callers treat this as a signal (non-admissibility), not a bug.
class NotDivisible : public std::domain_error {
 public:
  explicit NotDivisible(const std::string& what) : std::domain_error(what) {}
};

class NotAdmissible : public std::domain_error {
 public:
  explicit NotAdmissible(const std::string& what) : std::domain_error(what) {}
};

/// A configured enumeration or search budget would be exceeded.
class GuardExceeded : public std::runtime_error {
 public:
  explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// An internal consistency check failed (e.g. double counting in a
/// structure graph). Indicates a bug, never bad input.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qdesign
