#pragma once

#include <string>
#include <string_view>

#include "twistcalc/operators.hpp"
#include "twistcalc/poly.hpp"
#include "twistcalc/twist.hpp"

namespace twistcalc {

// Text grammar shared by polynomials and operators:
//
//   expr    := ['-'] term (('+' | '-') term)*
//   term    := power (['*'] power)*          juxtaposition composes
//   power   := primary ['^' int]
//   primary := rational | 'x' int | 'd' int | 'dp' '[' int (',' int)* ']'
//            | '(' expr ')' ['_q' [int]]
//
// '(n)_q' is the q-integer for the q of x1 (all q-twists must agree);
// '(n)_qi' uses the q of x_i. Whitespace, including newlines, is ignored.

/// Throws ParseError on syntax errors, operator atoms, or variables
/// outside x1..x<nvars>.
Poly parse_poly(std::string_view text, std::size_t nvars);

/// Parses an operator expression. Pure-polynomial factors are kept as one
/// coefficient atom; products of sums are not expanded across operator
/// atoms.
OperatorExpression parse_operator(std::string_view text, const TwistSpec& spec);

/// Canonical text: words joined by " + " / " - ", atoms separated by
/// spaces, multi-term coefficients parenthesized.
std::string to_string(const OperatorWord& word);
std::string to_string(const OperatorExpression& expr);

}  // namespace twistcalc
