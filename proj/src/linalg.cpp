// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include "shtvol/linalg.hpp"

#include <algorithm>

namespace shtvol {

namespace {

std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  if (n > Integer("1000000000000")) {
    throw PreconditionError("rational root search: coefficient too large to factor");
  }
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Rational evaluate(const std::vector<Rational>& c, const Rational& x) {
  Rational acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Synthetic division by (t - root), dropping the zero remainder.
std::vector<Rational> deflate(const std::vector<Rational>& c, const Rational& root) {
  std::vector<Rational> out(c.size() - 1);
  Rational carry(0);
  for (std::size_t i = c.size(); i-- > 1;) {
    carry = carry * root + c[i];
    out[i - 1] = carry;
  }
  return out;
}

}  // namespace

std::vector<Rational> rational_roots(std::vector<Rational> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  std::vector<Rational> roots;
  if (coeffs.size() <= 1) return roots;
  while (coeffs.size() > 1 && coeffs.front() == 0) {
    roots.push_back(0);
    coeffs.erase(coeffs.begin());
  }
  bool found = true;
  while (coeffs.size() > 1 && found) {
    found = false;
    Integer lcm_den(1);
    for (const auto& c : coeffs) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    Integer lead = Rational(coeffs.back() * lcm_den).get_num();
    Integer constant = Rational(coeffs.front() * lcm_den).get_num();
    for (const auto& p : positive_divisors(constant)) {
      for (const auto& q : positive_divisors(lead)) {
        for (int sign : {1, -1}) {
          Rational cand(sign * p, q);
          cand.canonicalize();
          if (evaluate(coeffs, cand) == 0) {
            roots.push_back(cand);
            coeffs = deflate(coeffs, cand);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace shtvol
