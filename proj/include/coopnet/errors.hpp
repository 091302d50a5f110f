#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coopnet {

// Points of different dimension were combined.
class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : std::invalid_argument("dimension mismatch: " + std::to_string(lhs) +
                              " vs " + std::to_string(rhs)) {}
};

// Projection direction is undefined (sphere projection of its own center).
class DegenerateProjection : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A target with no measurements cannot be updated.
class DegenerateNode : public std::invalid_argument {
 public:
  explicit DegenerateNode(std::size_t target)
      : std::invalid_argument("target " + std::to_string(target) +
                              " has no links"),
        target_(target) {}
  std::size_t target() const noexcept { return target_; }

 private:
  std::size_t target_;
};

class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, std::size_t iteration)
      : std::runtime_error(what + " (iteration " + std::to_string(iteration) +
                           ")"),
        iteration_(iteration) {}
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

// Raised when a convergence guarantee of a solver is violated at runtime.
// This always indicates a bug, never bad input.
class SolverInvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed configuration or document. field() names the offending key path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace coopnet
