// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#pragma once

#include <string_view>

#include "shtvol/polynomial.hpp"

namespace shtvol {

// Parses an infix polynomial expression over x1..x{nvars}.
//   expr   = term { ("+" | "-") term } ;
//   term   = unary { ("*" | "/") unary } ;      divisor must be a nonzero constant
//   unary  = ("+" | "-") unary | power ;
//   power  = atom [ "^" integer ] ;
//   atom   = integer | "x" integer | "(" expr ")" ;
Poly parse_polynomial(std::string_view text, int nvars);

}  // namespace shtvol
