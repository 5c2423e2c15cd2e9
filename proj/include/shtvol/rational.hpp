// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shtvol {

using Rational = mpq_class;
using Integer = mpz_class;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixQ = Matrix<Rational>;
using VectorQ = Vector<Rational>;

// Input that does not match the expected schema or grammar.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical precondition of an operation does not hold.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An exact identity that must hold failed; indicates a bug.
struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational make_rational(long num, long den = 1);
std::string to_string(const Rational& x);
Rational parse_rational(std::string_view text);
double to_double(const Rational& x);

Rational power(const Rational& base, long exponent);
Rational binomial(long n, long k);
Rational factorial(long n);
Rational multinomial(long n, std::span<const long> parts);

}  // namespace shtvol

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
