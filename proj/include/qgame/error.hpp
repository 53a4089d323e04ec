#pragma once

#include <stdexcept>
#include <string>

namespace qgame {

// Base for every input/domain violation raised by the library. The CLI maps
// all of these to exit code 3.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A quotient whose denominator is within kDegenerateEps of zero.
class DegenerateDenominator : public DomainError {
 public:
  explicit DegenerateDenominator(const std::string& what_quantity)
      : DomainError("degenerate denominator computing " + what_quantity) {}
};

// An operation restricted to one game family was handed another.
class FamilyMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

// |alpha|^2 + |beta|^2 away from one.
class NormalizationError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Out-of-range probability, entanglement parameter, grid size, ...
class InvalidArgument : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace qgame
