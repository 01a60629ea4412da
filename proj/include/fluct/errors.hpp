#pragma once

#include <stdexcept>
#include <string>

namespace fluct {

// Model, grid or contract parameters that violate their invariants.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Evaluation outside a function's domain (analyticity strip, barrier outside
// the grid, t <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The symbol handed to the Wiener-Hopf factorisation is zero, has a
// non-positive real part, or one of its factors degenerates.
class FactorisationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite values coming out of a numerical inversion.
class InversionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Wraps any failure inside a pricing pipeline with the name of the stage
// that raised it.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace fluct
