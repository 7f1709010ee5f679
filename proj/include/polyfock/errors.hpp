#pragma once

#include <stdexcept>
#include <string>

namespace polyfock {

// Base of the library's error taxonomy. The CLI maps subclasses onto its
// exit-code contract, so new failure modes should extend one of these rather
// than throwing std::runtime_error directly.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroDivisor : Error {
  explicit ZeroDivisor(const std::string& what) : Error(what) {}
};

// Exact division failed: the denominator does not divide the numerator in
// C[z, zbar]. Carries the reduction remainder rendered as an expression.
struct NotDivisible : Error {
  explicit NotDivisible(const std::string& what) : Error(what) {}
};

struct OrderTooLarge : Error {
  explicit OrderTooLarge(const std::string& what) : Error(what) {}
};

struct GridOrderTooLarge : Error {
  explicit GridOrderTooLarge(const std::string& what) : Error(what) {}
};

// A quadrature budget (configured cap or convergence estimate) was too small
// for the requested computation.
struct QuadratureOrderInsufficient : Error {
  explicit QuadratureOrderInsufficient(const std::string& what) : Error(what) {}
};

struct NotInSubspace : Error {
  explicit NotInSubspace(const std::string& what) : Error(what) {}
};

struct WindowSubspaceViolation : Error {
  explicit WindowSubspaceViolation(const std::string& what) : Error(what) {}
};

struct UnboundedSymbol : Error {
  explicit UnboundedSymbol(const std::string& what) : Error(what) {}
};

struct TruncationWarning : Error {
  explicit TruncationWarning(const std::string& what) : Error(what) {}
};

struct DivergentWeight : Error {
  explicit DivergentWeight(const std::string& what) : Error(what) {}
};

struct LengthMismatch : Error {
  explicit LengthMismatch(const std::string& what) : Error(what) {}
};

// Expression-text rejection; position is a 0-based byte offset into the input.
struct ParseError : Error {
  std::size_t position;
  std::string expected;
  ParseError(std::size_t pos, const std::string& exp, const std::string& what)
      : Error(what), position(pos), expected(exp) {}
};

}  // namespace polyfock
