#pragma once

#include <string>
#include <vector>

#include "cml/cayley_loop.hpp"

namespace cml {

// Z_n under addition.
CayleyLoop cyclic(int n);

// Direct product of cyclic groups with the given invariant factors.
CayleyLoop abelian(const std::vector<int>& factors);

// The order-81 nonassociative CML of exponent 3: elements (x1,x2,x3,w) in
// Z_3^4 with product (x+y mod 3, wa+wb + (x1-y1)(x2*y3 - x3*y2) mod 3).
// Verified exhaustively at first use: the table must be commutative, satisfy
// x^2*yz = xy*xz on all 81^3 triples, and be nonassociative; if the default
// trilinear term fails, the eight sign variants are tried in order.
const CayleyLoop& cml81();

// Parse a builtin expression: atoms "cyclic:N", "abelian:d1,d2,...",
// "cml81", joined by '*' for direct products. Throws UnknownName.
CayleyLoop make_builtin(const std::string& expr);

// Deterministic listing of the builtin templates.
std::vector<std::string> catalog();

}  // namespace cml
