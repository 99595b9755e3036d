#pragma once

#include <stdexcept>
#include <string>

namespace polya {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input or a violated precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

// Iterative solver failed to meet its residual contract.
class SolverError : public Error {
 public:
  using Error::Error;
};

// A check that must hold mathematically failed numerically.
class BoundViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace polya
