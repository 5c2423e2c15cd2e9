// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include <doctest.h>

#include <cmath>

#include "shtvol/lfunctions.hpp"
#include "support.hpp"

using namespace shtvol;
using shtvol::test::Q;

namespace {

UPolyQ upoly(std::initializer_list<long> coeffs) {
  std::vector<Rational> v;
  for (long c : coeffs) v.emplace_back(c);
  return UPolyQ(v);
}

ArtinLSystem z2_genus_two() {
  // q = 4, Y of genus 2 with P_Y = (1 - 2t)^4, sign character with (1 - 4t^2).
  return build_artin_system("z2", 2, 4, {{"triv", 1, upoly({1, -8, 24, -32, 16})}, {"sign", 1, upoly({1, 0, -4})}});
}

}  // namespace

TEST_CASE("curve zeta functions") {
  auto z0 = zeta_curve(canonical_curve(0)).rational_function();
  CHECK(z0(Q("1/4")) == Q("8/3"));
  auto c1 = canonical_curve(1);
  CHECK(c1.h1(Q("1/2")) == 0);
  CHECK(c1.h1 == upoly({1, -2}) * upoly({1, -2}));
  auto z1 = zeta_curve(c1);
  CHECK(z1.pole_one == 1);
  CHECK(z1.pole_q == 1);
  CHECK_THROWS_AS(z1.rational_function()(Rational(1)), PreconditionError);
  CHECK_THROWS_AS(z1.rational_function()(Q("1/4")), PreconditionError);
  CHECK(weil_bound_holds(c1));
}

TEST_CASE("curve data validation") {
  CHECK_THROWS_AS(make_curve(6, 0, upoly({1})), PreconditionError);
  CHECK_THROWS_AS(make_curve(4, 1, upoly({1, -4, 5})), PreconditionError);
  CHECK_THROWS_AS(make_curve(4, 1, upoly({1, -4})), PreconditionError);
  MatrixQ f = MatrixQ::Identity(2, 2) * Rational(2);
  MatrixQ bad = MatrixQ::Identity(2, 2);
  CHECK_THROWS_AS(make_curve(4, 1, upoly({1, -4, 4}), f, bad), PreconditionError);
  MatrixQ f3 = MatrixQ::Identity(2, 2) * Rational(3);
  CHECK_THROWS_AS(make_curve(4, 1, upoly({1, -4, 4}), f3), PreconditionError);
}

TEST_CASE("theta derivatives") {
  CHECK(RationalFunction::polynomial(upoly({5})).theta()(Q("1/3")) == 0);
  for (int d = 0; d <= 6; ++d) {
    auto f = RationalFunction::polynomial(UPolyQ::monomial(d));
    CHECK(f.theta(2)(Rational(1)) == d * d);
  }
  // theta of 1/(1 - 2t) is 2t/(1 - 2t)^2
  RationalFunction g(upoly({1}), upoly({1, -2}), 1);
  for (const auto& t : {Q("1/5"), Q("-3"), Q("2/7")}) CHECK(g.theta()(t) == 2 * t / ((1 - 2 * t) * (1 - 2 * t)));
}

TEST_CASE("logarithmic derivatives by two routes") {
  auto c0 = canonical_curve(0);
  Rational t = Q("1/4");
  CHECK(log_derivative_at(zeta_curve(c0), 2) == t / (1 - t) + 2 * t / (1 - 2 * t));
  CHECK(log_derivative_at(zeta_curve(c0), 2) == Q("4/3"));
  auto c1 = canonical_curve(1);
  CHECK(log_derivative_at(zeta_curve(c1), 2) == Q("1/15") + Q("1/3") - 2 * Q("1/7"));
  for (int which : {0, 1}) {
    auto c = canonical_curve(which);
    for (int d = 2; d <= 4; ++d) CHECK(log_derivative_at(zeta_curve(c), d) == log_derivative_trace(c, d));
  }
  LSeries one{4, upoly({1})};
  CHECK(log_derivative_at(one, 3) == 0);
  CHECK_THROWS_AS(log_derivative_at(zeta_curve(c0), 0), PreconditionError);
}

TEST_CASE("starred shift is regular at the pole") {
  for (int which : {0, 1}) {
    auto c = canonical_curve(which);
    auto starred = zeta_curve(c).shifted(1, true);
    Rational value = starred(Rational(1));
    // (1 - t) zeta(t / q) near t = 1 tends to P(1/q) / (1 - 1/q).
    CHECK(value == c.h1(1 / c.q) / (1 - 1 / c.q));
    auto plain = zeta_curve(c).rational_function();
    for (int k = 2; k <= 5; ++k) {
      Rational t = 1 - power(Rational(10), -k);
      Rational near = (1 - t) * plain(t / c.q);
      CHECK(to_double(abs(near - value)) < 10.0 * std::pow(10.0, -k));
    }
  }
}

TEST_CASE("leg operators at s = 0") {
  auto c0 = canonical_curve(0);
  auto gl1 = gross_motive(build_root_datum(Family::GL, 1));
  CHECK(apply_leg_operators(c0, gl1, {}) == 2);
  auto gl2 = gross_motive(build_root_datum(Family::GL, 2));
  CHECK(apply_leg_operators(c0, gl2, {}) == Q("16/3"));
  auto pgl2 = gross_motive(build_root_datum(Family::PGL, 2));
  // theta zeta at t = 1/4 equals zeta * (theta zeta / zeta) = 8/3 * 4/3.
  CHECK(apply_leg_operators(c0, pgl2, {{0, {1}}}) == Q("32/9"));
  CHECK(apply_leg_operators(c0, pgl2, {{3, {0}}}) == 8);
  CHECK_THROWS_AS(apply_leg_operators(c0, pgl2, {{0, {1, 2}}}), PreconditionError);
}

TEST_CASE("functional equation signs") {
  CHECK(functional_equation_sign(upoly({1, -4, 4}), 4) == 1);
  CHECK(functional_equation_sign(upoly({1, 0, -4}), 4) == -1);
  CHECK_FALSE(functional_equation_sign(upoly({1, 1}), 4).has_value());
}

TEST_CASE("Artin systems factor the base zeta function") {
  auto sys = build_artin_system("z2", 1, 4, {{"triv", 1, upoly({1, -4, 4})}, {"sign", 1, upoly({1})}});
  CHECK(sys.product_numerator() == upoly({1, -4, 4}));
  CHECK(sys.log_derivative(1, 2) == 0);

  auto s2 = z2_genus_two();
  CHECK(s2.product_numerator() == upoly({1, -8, 24, -32, 16}) * upoly({1, 0, -4}));
  CHECK(s2.log_derivative({Q("1/2"), Q("-1/2")}, 2) ==
        (s2.log_derivative(0, 2) - s2.log_derivative(1, 2)) / 2);
  CHECK_THROWS_AS(build_artin_system("z2", 2, 4, {{"triv", 1, upoly({1, -8, 24, -32, 16})}, {"sign", 1, upoly({1, 1})}}),
                  PreconditionError);
}

TEST_CASE("log derivatives obey the functional equation") {
  auto sys = z2_genus_two();
  for (std::size_t rho = 0; rho < sys.reps.size(); ++rho) {
    for (int d : {2, 3, -1, -2}) {
      Rational lhs = sys.log_derivative(rho, d) + sys.log_derivative(rho, 1 - d);
      CHECK(lhs == (2 * sys.gY - 2) * sys.reps[rho].dim);
    }
  }
}
