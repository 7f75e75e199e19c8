#pragma once

#include <string>

#include "byzfit/multipoly.hpp"

namespace byzfit {

// Parses a polynomial expression into a MultiPoly over the requested field.
//
// Grammar (documented in docs/cli.md):
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := number | variable | '(' expr ')' | '-' factor
// Variables are x1..xk with aliases x,y,z for x1,x2,x3; numbers are
// integers, decimals ("0.25") or rationals ("3/4"). Decimal and rational
// literals stay exact over the Rational field.
//
// vars <= 0 infers the variable count from the highest index used
// (at least 1).
MultiPoly parse_poly(const std::string& text, const Field& field, int vars = 0);

}  // namespace byzfit
