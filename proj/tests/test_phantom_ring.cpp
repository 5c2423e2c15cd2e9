// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include <doctest.h>

#include "shtvol/phantom_ring.hpp"
#include "support.hpp"

using namespace shtvol;
using shtvol::test::P;
using shtvol::test::Q;

namespace {

std::vector<int> trimmed(std::vector<int> h) {
  while (!h.empty() && h.back() == 0) h.pop_back();
  return h;
}

std::vector<int> poly_product(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// F = diag(1, 4) over q = 4: a curve datum whose Frobenius has distinct rational eigenvalues.
CurveData split_eigen_curve() {
  MatrixQ f = MatrixQ::Zero(2, 2);
  f(0, 0) = 1;
  f(1, 1) = 4;
  MatrixQ j = MatrixQ::Zero(2, 2);
  j(0, 1) = 1;
  j(1, 0) = -1;
  std::vector<Rational> p{Rational(1), Rational(-5), Rational(4)};
  return make_curve(4, 1, UPolyQ(p), f, j);
}

std::vector<LegSpec> pgl2_legs(const std::vector<Coweight>& mu, const Poly& eta, const Poly& eta_prime) {
  std::vector<LegSpec> legs;
  for (const auto& m : mu) legs.push_back({m, eta, eta_prime, Rational(0)});
  return legs;
}

Rational zeta_at(const CurveData& c, int d) { return zeta_curve(c).rational_function()(power(c.q, -d)); }

}  // namespace

TEST_CASE("Xi classes on the projective line") {
  auto h = curve_cohomology(canonical_curve(0));
  auto xi2 = xi_class(h, 2);
  KunnethClass expected;
  expected.factors = 2;
  expected.add({0, 1}, Q("1/3"));
  expected.add({1, 0}, Rational(1));
  CHECK(xi2 == expected);
  auto restricted = diagonal_restriction(h, xi2);
  CHECK(kunneth_integral(h, restricted) == Q("4/3"));
  CHECK(kunneth_integral(h, restricted) == log_derivative_at(zeta_curve(canonical_curve(0)), 2));
  CHECK_THROWS_AS(xi_class(h, 1), PreconditionError);
}

TEST_CASE("Xi classes on the elliptic curve") {
  auto h = curve_cohomology(canonical_curve(1));
  auto xi2 = xi_class(h, 2);
  // Dual basis of (zeta_1, zeta_2) under the pairing is (zeta_2, -zeta_1); the coefficient of
  // zeta_j (x) zeta^j is (1 - 2 * 4)^{-1}.
  CHECK(xi2.terms.at({1, 2}) == Q("-1/7"));
  CHECK(xi2.terms.at({2, 1}) == Q("1/7"));
  CHECK(xi2.terms.at({0, 3}) == Q("1/15"));
  CHECK(xi2.terms.at({3, 0}) == Q("1/3"));
  for (int d = 2; d <= 4; ++d) {
    auto x = xi_class(h, d);
    CHECK(x == xi_class_right(h, d));
    CHECK(x == xi_class_components(h, d));
    CHECK(kunneth_integral(h, diagonal_restriction(h, x)) == log_derivative_at(zeta_curve(canonical_curve(1)), d));
  }
}

TEST_CASE("Xi classes with distinct Frobenius eigenvalues") {
  auto h = curve_cohomology(split_eigen_curve());
  for (int d = 2; d <= 4; ++d) {
    CHECK(xi_class(h, d) == xi_class_right(h, d));
    CHECK(xi_class(h, d) == xi_class_components(h, d));
  }
}

TEST_CASE("Xi product identity") {
  for (int which : {0, 1}) {
    auto h = curve_cohomology(canonical_curve(which));
    for (int d : {2, 3}) {
      for (int e : {2, 3}) {
        auto checks = xi_product_identity(h, d, e);
        REQUIRE(checks.size() == 3);
        for (const auto& c : checks) CHECK_MESSAGE(c.holds, c.branch);
      }
    }
  }
}

TEST_CASE("PGL_2 phantom ring with two legs") {
  auto rd = build_root_datum(Family::PGL, 2);
  auto mu = colmez_coweights(2, {1, 1});
  std::vector<int> x_poincare_g0{1, 0, 1};
  std::vector<int> x_poincare_g1{1, 2, 1};
  std::vector<int> flag{1, 0, 1};
  for (int which : {0, 1}) {
    auto curve = canonical_curve(which);
    auto ring = build_phantom(rd, mu, curve);
    auto rep = phantom_report(ring);
    auto leg = poly_product(which == 0 ? x_poincare_g0 : x_poincare_g1, flag);
    CHECK(trimmed(rep.hilbert) == poly_product(leg, leg));
    CHECK(rep.dimension == (which == 0 ? 16 : 64));
    CHECK(rep.reduction_hilbert == poly_product(flag, flag));
    CHECK(rep.free);
    CHECK(rep.top_one_dimensional);
    CHECK(rep.vanishes_above_top);
    CHECK(rep.frobenius_eigen);
    CHECK(rep.perfect);
    if (which == 0) CHECK(rep.frobenius_pure);
    REQUIRE(rep.volume_top.has_value());
    CHECK(*rep.volume_top == power(curve.q, 3 * (curve.g - 1)) * zeta_at(curve, 2));
    CHECK(ring.volume(ring.top_class) == ring.volume(ring.ambient->multiply(ring.ambient->one(), ring.top_class)));

    for (const auto& eta_prime : {Poly(2), P("3*x1", 2)}) {
      auto legs = pgl2_legs(mu, P("x1^2", 2), eta_prime);
      CHECK(ring.volume(volume_integrand(*ring.ambient, legs)) == volume_split(rd, legs, curve, false).per_component);
    }
  }
}

TEST_CASE("the volume functional kills the ideal") {
  auto rd = build_root_datum(Family::PGL, 2);
  auto mu = colmez_coweights(2, {1, -1});
  auto ring = build_phantom(rd, mu, canonical_curve(1));
  const auto& amb = *ring.ambient;
  auto integrand = volume_integrand(amb, pgl2_legs(mu, P("x1^2", 2), P("x1", 2)));
  Rational base = ring.volume(integrand);
  for (const auto& gen : ring.generators) {
    int complement = ring.top_degree - amb.degree(gen);
    if (complement < 0) continue;
    auto basis = amb.basis(complement);
    for (int trial = 0; trial < 3; ++trial) {
      const auto& theta = basis[static_cast<std::size_t>(test::uniform(0, static_cast<int>(basis.size()) - 1))];
      auto shifted = element_sum(integrand, amb.multiply(gen, theta), test::random_rational());
      CHECK(ring.volume(shifted) == base);
    }
  }
}

TEST_CASE("relations of products lie in the ideal") {
  auto rd = build_root_datum(Family::PGL, 2);
  auto ring = build_phantom(rd, colmez_coweights(2, {1, 1}), canonical_curve(0));
  Poly e2 = rd.fundamental_invariants[0].poly;
  CHECK(difg_holds(*ring.ambient, 0, e2, e2));
  CHECK(difg_holds(*ring.ambient, 1, e2 * Q("2/3"), e2 * e2 * Rational(-5)));
}

TEST_CASE("reductive rings") {
  for (int n : {1, 2}) {
    auto rd = build_root_datum(Family::GL, n);
    Coweight a = Coweight::Zero(n);
    Coweight b = Coweight::Zero(n);
    a(0) = 1;
    b(n - 1) = -1;
    Coweight omega = Coweight::Zero(n);
    omega(0) = 3;
    for (int which : {0, 1}) {
      if (n == 2 && which == 1) continue;
      auto ring = build_phantom(rd, {a, b}, canonical_curve(which), omega);
      auto rep = phantom_report(ring);
      CHECK(rep.free);
      CHECK(trimmed(rep.hilbert) == rep.expected);
      CHECK_FALSE(ring.prefactor.has_value());
      if (n == 1) CHECK(rep.dimension == (which == 0 ? 4 : 16));
    }
  }
  auto gl1 = build_root_datum(Family::GL, 1);
  Coweight a = Coweight::Constant(1, 1);
  Coweight b = Coweight::Constant(1, -1);
  Coweight omega = Coweight::Constant(1, 3);
  PhantomAmbient amb(gl1, {a, b}, curve_cohomology(canonical_curve(0)), false);
  auto d = relation_d_star(amb, 0, gl1.fundamental_invariants[0].poly, omega);
  auto expected = element_sum(element_sum(amb.leg_poly(0, P("x1", 1)), amb.xi_at(1)), amb.xi_at(0), Rational(-4));
  CHECK(d == expected);
}

TEST_CASE("restricted ring reproduces the proposition") {
  auto triv = make_group("trivial");
  auto c0 = canonical_curve(0);
  auto sys = build_artin_system("trivial", 0, c0.q, {{"triv", 1, c0.h1}});
  for (int n : {2, 3}) {
    for (int r = 1; r <= (n == 2 ? 3 : 2); ++r) {
      ColmezInput in{n, std::vector<int>(static_cast<std::size_t>(r), 1), std::vector<int>(static_cast<std::size_t>(r), 0),
                     &triv, &sys};
      auto s = build_phantom_sigma(in);
      CHECK(s.ring.integral(colmez_eta(s)) == volume_colmez(in).proposition_sum);
    }
  }
  auto z2 = make_group("z2");
  std::vector<Rational> p{Rational(1), Rational(-4), Rational(4)};
  auto zsys = build_artin_system("z2", 1, 4, {{"triv", 1, UPolyQ(p)}, {"sign", 1, UPolyQ{Rational(1)}}});
  for (const auto& signs : {std::vector<int>{1, 1}, std::vector<int>{1, -1}}) {
    for (const auto& sigma : {std::vector<int>{0, 0}, std::vector<int>{0, 1}}) {
      ColmezInput in{2, signs, sigma, &z2, &zsys};
      auto s = build_phantom_sigma(in);
      CHECK(s.ring.integral(colmez_eta(s)) == volume_colmez(in).proposition_sum);
    }
  }
}

TEST_CASE("reductions of leg monomials in the restricted ring") {
  auto triv = make_group("trivial");
  auto c0 = canonical_curve(0);
  auto sys = build_artin_system("trivial", 0, c0.q, {{"triv", 1, c0.h1}});
  ColmezInput in{2, {1, 1, 1}, {0, 0, 0}, &triv, &sys};
  auto s = build_phantom_sigma(in);
  const auto& amb = *s.ring.ambient;
  auto c = s.constants.at(2);
  CHECK(c[0][0] == log_derivative_at(zeta_curve(c0), 2));
  auto xi_t = amb.multiply(amb.xi_at(0), colmez_monomial(s, {1, 1, 1}));
  CHECK(s.ring.in_ideal(colmez_monomial(s, {2, 2, 0})));
  CHECK(s.ring.in_ideal(colmez_monomial(s, {4, 0, 0})));
  CHECK(s.ring.in_ideal(element_sum(colmez_monomial(s, {3, 1, 0}), xi_t, c[0][2])));
  CHECK(s.ring.in_ideal(element_sum(colmez_monomial(s, {2, 1, 1}), xi_t, c[0][0])));
  CHECK_FALSE(s.ring.in_ideal(xi_t));

  Poly e2 = build_root_datum(Family::PGL, 2).fundamental_invariants[0].poly;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      auto prod = amb.multiply(amb.leg_poly(i, e2 * test::random_rational()), amb.leg_poly(k, e2));
      CHECK(s.ring.in_ideal(prod));
    }
  }
}
