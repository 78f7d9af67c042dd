#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mfzero {

// Root of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-side precondition was violated (bad weight, a >= 2 for sech, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed newform file or other unreadable input.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Coefficient data violates a structural invariant; `index()` is the n of c_n.
class InvariantError : public Error {
 public:
  InvariantError(const std::string& what, std::uint64_t n)
      : Error(what + " (n=" + std::to_string(n) + ")"), index_(n) {}
  std::uint64_t index() const { return index_; }

 private:
  std::uint64_t index_;
};

// Builtin coefficient generators could not produce the requested data.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// Iterative numerics (continued fraction, quadrature) did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Not enough coefficients to evaluate the L-function to the requested height.
class InsufficientTermsError : public Error {
 public:
  InsufficientTermsError(const std::string& what, std::size_t required)
      : Error(what + " (need M >= " + std::to_string(required) + ")"),
        required_(required) {}
  std::size_t required() const { return required_; }

 private:
  std::size_t required_;
};

// A truncation tail or resource estimate exceeded the caller's budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Numerical consistency check failed (realness of Z, sign detection, ...).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfzero
