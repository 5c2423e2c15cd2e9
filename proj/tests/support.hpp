// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#pragma once

#include <random>
#include <string>

#include "shtvol/expression.hpp"
#include "shtvol/rational.hpp"

namespace shtvol::test {

inline Rational Q(const std::string& text) { return parse_rational(text); }

inline Poly P(const std::string& text, int nvars) { return parse_polynomial(text, nvars); }

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20260107ULL);
  return gen;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Rational random_rational(int span = 9) {
  int den = uniform(1, span);
  return make_rational(uniform(-span, span), den);
}

}  // namespace shtvol::test
