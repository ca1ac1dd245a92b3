#pragma once

#include <stdexcept>
#include <string>

namespace gmzi {

// Base class for domain errors raised by this library. Argument and usage
// errors use std::invalid_argument / std::out_of_range directly.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A phase configuration that is not type-consistent was passed to an
// operation that requires a switching configuration.
class InvalidPhaseConfig : public Error {
 public:
  InvalidPhaseConfig(const std::string& what, int failure_level)
      : Error(what), failure_level_(failure_level) {}

  // Smallest pairing level at which the consistency check fails (1-based).
  int failure_level() const { return failure_level_; }

 private:
  int failure_level_;
};

// Requested Fock space dimension exceeds the configured cap.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(what) {}
};

// A routing request admits no valid phase configuration.
class UnsatisfiableRoute : public Error {
 public:
  explicit UnsatisfiableRoute(const std::string& what) : Error(what) {}
};

// A scheduling request names the same resource twice in one time slot.
class DisjointnessViolation : public Error {
 public:
  explicit DisjointnessViolation(const std::string& what) : Error(what) {}
};

}  // namespace gmzi
