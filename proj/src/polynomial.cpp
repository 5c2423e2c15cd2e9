// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include "shtvol/polynomial.hpp"

namespace shtvol {

namespace {
constexpr std::uint64_t kHighBits = 0x8080808080808080ull;
}

Monomial Monomial::from_exponents(std::span<const int> exponents) {
  if (static_cast<int>(exponents.size()) > kMaxVariables) {
    throw PreconditionError("too many variables for a packed monomial");
  }
  std::uint64_t bits = 0;
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    int e = exponents[k];
    if (e < 0 || e > kMaxExponent) throw PreconditionError("monomial exponent out of range");
    bits |= static_cast<std::uint64_t>(e) << shift(static_cast<int>(k));
  }
  return Monomial(bits);
}

Monomial Monomial::variable(int k, int exponent) {
  if (k < 0 || k >= kMaxVariables) throw PreconditionError("variable index out of range");
  if (exponent < 0 || exponent > kMaxExponent) throw PreconditionError("monomial exponent out of range");
  return Monomial(static_cast<std::uint64_t>(exponent) << shift(k));
}

int Monomial::degree() const {
  int d = 0;
  for (int k = 0; k < kMaxVariables; ++k) d += exponent(k);
  return d;
}

std::vector<int> Monomial::exponents(int nvars) const {
  std::vector<int> out(static_cast<std::size_t>(nvars));
  for (int k = 0; k < nvars; ++k) out[static_cast<std::size_t>(k)] = exponent(k);
  return out;
}

Monomial Monomial::with_exponent(int k, int e) const {
  if (e < 0 || e > kMaxExponent) throw PreconditionError("monomial exponent out of range");
  std::uint64_t mask = 0xffull << shift(k);
  return Monomial((bits_ & ~mask) | (static_cast<std::uint64_t>(e) << shift(k)));
}

bool Monomial::divides(const Monomial& other) const {
  for (int k = 0; k < kMaxVariables; ++k) {
    if (exponent(k) > other.exponent(k)) return false;
  }
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  std::uint64_t sum = a.bits_ + b.bits_;
  if (((a.bits_ | b.bits_ | sum) & kHighBits) != 0) {
    throw PreconditionError("monomial exponent overflow");
  }
  return Monomial(sum);
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  if (!b.divides(a)) throw PreconditionError("monomial does not divide");
  return Monomial(a.bits_ - b.bits_);
}

std::string scalar_to_string(const Rational& x) { return to_string(x); }

}  // namespace shtvol
