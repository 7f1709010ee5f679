#pragma once

#include <string>

#include "polyfock/cpoly.hpp"

namespace polyfock {

// Parses the symbol/window expression language:
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := 'z' | 'zbar' | 'pi' | 'i' | number | 'phi' '(' uint ',' uint ')'
//           | '(' expr ')'
// The optional leading '-' exists so every printed polynomial re-parses.
// Throws ParseError with the byte offset and the expected token class.
CPolynomial parse_expression(const std::string& text);

// Deterministic rendering, leading term first; parse_expression(to_expression(p))
// reproduces p coefficient-for-coefficient.
std::string to_expression(const CPolynomial& p);

// Rendering for differential operators ('dz'/'dzbar' mark derivatives). Not
// part of the parse grammar; informational output only.
std::string to_expression(const DiffOp& op);

}  // namespace polyfock
