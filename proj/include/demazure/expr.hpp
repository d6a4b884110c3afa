#pragma once

#include <string>

#include "demazure/ring.hpp"

namespace demazure {

// Parses a formula into an element of Q. Grammar:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | 'h' | 'v' | 'q' | '(' expr ')'
//           | 'x(' weight ')'      x_lambda
//           | 'xh(' root ')'       h - beta, or 1 - q e^{-beta}
//           | 'e(' weight ')'      e^lambda (multiplicative backend)
//           | 'kappa(' weight ')'
//           | 't' digits           lattice coordinate variable (additive)
//   weight := signed sum of c*aK (simple roots) and c*wK (lattice basis
//             vectors), e.g. "a1+2a2", "-a3", "w1-w2".
//
// Division is exact in Q and requires the divisor to be a unit times known
// factors. Throws AlgebraError on malformed input.
QElem parse_expression(const Ring& ring, const std::string& text);

// Weight from the weight syntax above.
Weight parse_weight(const RootDatum& d, const std::string& text);

}  // namespace demazure
