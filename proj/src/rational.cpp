// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include "shtvol/rational.hpp"

#include <cctype>

namespace shtvol {

Rational make_rational(long num, long den) {
  if (den == 0) throw PreconditionError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

static Integer parse_integer(std::string_view s) {
  std::string t(s);
  std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
  if (start == t.size()) throw SchemaError("malformed rational: '" + t + "'");
  for (std::size_t i = start; i < t.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
      throw SchemaError("malformed rational: '" + t + "'");
    }
  }
  if (t[0] == '+') t.erase(0, 1);
  return Integer(t, 10);
}

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw SchemaError("zero denominator in rational literal");
  Rational r(parse_integer(text.substr(0, slash)), den);
  r.canonicalize();
  return r;
}

double to_double(const Rational& x) { return x.get_d(); }

Rational power(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw PreconditionError("negative power of zero");
    return power(Rational(1) / base, -exponent);
  }
  Rational result(1);
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  result.canonicalize();
  return result;
}

Rational binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

Rational factorial(long n) {
  if (n < 0) throw PreconditionError("factorial of a negative integer");
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(r);
}

Rational multinomial(long n, std::span<const long> parts) {
  long total = 0;
  for (long p : parts) {
    if (p < 0) return 0;
    total += p;
  }
  if (total != n) return 0;
  Rational r = factorial(n);
  for (long p : parts) r /= factorial(p);
  return r;
}

}  // namespace shtvol
