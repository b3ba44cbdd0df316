#pragma once

#include <stdexcept>
#include <string>

namespace padic {

/// Base class for every failure raised by the library.
class PadicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A comparison or division could not be decided with the digits carried.
/// `bound_exponent` is the best known bound: the offending quantity is
/// congruent to 0 modulo p^bound_exponent.
class PrecisionExhausted : public PadicError {
 public:
  PrecisionExhausted(std::string quantity, int bound_exponent)
      : PadicError("precision exhausted while deciding " + quantity +
                   " (known only to be O(p^" + std::to_string(bound_exponent) +
                   ")); raise the working precision"),
        quantity_(std::move(quantity)),
        bound_exponent_(bound_exponent) {}

  const std::string& quantity() const noexcept { return quantity_; }
  int bound_exponent() const noexcept { return bound_exponent_; }

 private:
  std::string quantity_;
  int bound_exponent_;
};

/// Argument outside the domain of a series or of a map.
class DomainError : public PadicError {
 public:
  using PadicError::PadicError;
};

/// Evaluation exactly at the pole of the Potts-Bethe map.
class PoleError : public PadicError {
 public:
  using PadicError::PadicError;
};

/// An inverse branch could not be formed at the requested point.
class BranchError : public PadicError {
 public:
  using PadicError::PadicError;
};

/// No covering exists because the solution set is empty.
class CoveringUnavailable : public PadicError {
 public:
  using PadicError::PadicError;
};

/// An orbit left the covering; the starting point is not in the Julia set.
class EscapedAtStep : public PadicError {
 public:
  explicit EscapedAtStep(int step)
      : PadicError("orbit escaped the covering at step " + std::to_string(step)),
        step_(step) {}
  int step() const noexcept { return step_; }

 private:
  int step_;
};

}  // namespace padic
