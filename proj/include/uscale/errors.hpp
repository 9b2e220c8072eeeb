#pragma once

#include <stdexcept>
#include <string>

namespace uscale {

/// Input matrix failed a unitarity check.
class NonUnitaryInput : public std::invalid_argument {
 public:
  NonUnitaryInput(const std::string& what, double residual)
      : std::invalid_argument(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Operand sizes do not conform (a caller bug).
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation that is only defined for one particular size was given another.
class WrongDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OddDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// U(2) matrix lies in the IDENTITY or NOT double coset (sin or cos of phi is 0).
class DegenerateCoset : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace uscale
