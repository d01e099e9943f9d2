#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vsalisp {

/// Base class for every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : Error("dimension mismatch: " + std::to_string(lhs) + " vs " +
              std::to_string(rhs)) {}
};

class DegenerateVector : public Error {
 public:
  using Error::Error;
};

class EmptyMemory : public Error {
 public:
  EmptyMemory() : Error("empty cleanup memory") {}
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class BudgetExhausted : public EvalError {
 public:
  explicit BudgetExhausted(const std::string& what)
      : EvalError("evaluation budget exhausted (" + what + ")") {}
};

class DecodeDivergence : public Error {
 public:
  DecodeDivergence() : Error("decode divergence") {}
};

/// A broken internal invariant; the CLI maps these to exit code 2.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace vsalisp
