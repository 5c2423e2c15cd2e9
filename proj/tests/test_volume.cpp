// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include <doctest.h>

#include "shtvol/volume.hpp"
#include "support.hpp"

using namespace shtvol;
using shtvol::test::P;
using shtvol::test::Q;

namespace {

UPolyQ upoly(std::initializer_list<long> coeffs) {
  std::vector<Rational> v;
  for (long c : coeffs) v.emplace_back(c);
  return UPolyQ(v);
}

// Mass of SL_2 bundles on the projective line over F_q, summed over O(a) + O(-a), a <= amax.
Rational harder_mass_sl2(long q, int amax) {
  Rational mass = Rational(1) / Rational(q * (q * q - 1));
  for (int a = 1; a <= amax; ++a) mass += 1 / (Rational(q - 1) * power(Rational(q), 2 * a + 1));
  return mass;
}

// Eulerian polynomial A_k, constant term first.
std::vector<Rational> eulerian(int k) {
  std::vector<Rational> a{Rational(1)};
  for (int m = 2; m <= k; ++m) {
    std::vector<Rational> next(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      Rational left = i < static_cast<int>(a.size()) ? a[static_cast<std::size_t>(i)] * (i + 1) : Rational(0);
      Rational right = i >= 1 ? a[static_cast<std::size_t>(i - 1)] * (m - i) : Rational(0);
      next[static_cast<std::size_t>(i)] = left + right;
    }
    a = next;
  }
  return a;
}

// theta^k of 1/(1 - a t) at t = 1.
Rational theta_geometric(const Rational& a, int k) {
  if (k == 0) return 1 / (1 - a);
  Rational poly(0);
  auto e = eulerian(k);
  for (std::size_t i = e.size(); i-- > 0;) poly = poly * a + e[i];
  return a * poly / power(1 - a, k + 1);
}

// theta^k of 1/((1 - a t)(1 - b t)) at t = 1 by partial fractions.
Rational theta_two_factors(const Rational& a, const Rational& b, int k) {
  return a / (a - b) * theta_geometric(a, k) + b / (b - a) * theta_geometric(b, k);
}

Coweight half_pgl2() {
  Coweight mu(2);
  mu << Q("1/2"), Q("-1/2");
  return mu;
}

std::vector<LegSpec> pgl2_legs(const Poly& eta, const Poly& eta_prime, int r = 2) {
  std::vector<LegSpec> legs;
  for (int j = 0; j < r; ++j) legs.push_back({half_pgl2(), eta, eta_prime, Rational(0)});
  return legs;
}

ArtinLSystem trivial_system(const CurveData& c) { return build_artin_system("trivial", c.g, c.q, {{"triv", 1, c.h1}}); }

}  // namespace

TEST_CASE("series helper matches direct summation") {
  Rational a = Q("1/3");
  for (int k = 0; k <= 4; ++k) {
    Rational s(0);
    for (int m = 1; m <= 80; ++m) s += power(Rational(m), k) * power(a, m);
    if (k == 0) s += 1;
    CHECK(to_double(abs(s - theta_geometric(a, k))) < 1e-25);
  }
}

TEST_CASE("rank-one tamagawa masses without legs") {
  for (long q : {2, 3, 4, 5}) {
    auto curve = make_curve(q, 0, upoly({1}));
    auto v = volume_split(build_root_datum(Family::SL, 2), {}, curve, false);
    Rational mass = harder_mass_sl2(q, 40);
    CHECK(v.value >= mass);
    CHECK(to_double(v.value - mass) < 1e-20);
    CHECK(v.value == power(Rational(q), -3) * theta_two_factors(power(Rational(q), -2), power(Rational(q), -1), 0));
  }
  auto c0 = canonical_curve(0);
  CHECK(volume_split(build_root_datum(Family::SL, 2), {}, c0, true).value == Q("1/3"));
  CHECK(volume_gln(2, 0, {}, {}, c0).value == Q("1/3"));
  CHECK(volume_gln(1, 0, {}, {}, c0).value == 1);
}

TEST_CASE("two PGL_2 legs") {
  auto rd = build_root_datum(Family::PGL, 2);
  for (int which : {0, 1}) {
    auto c = canonical_curve(which);
    auto v = volume_split(rd, pgl2_legs(P("x1^2", 2), Poly(2)), c, false);
    Rational q = c.q;
    // theta^2 zeta(t / q^2) at t = 1; each leg operator is -theta.
    Rational expected(0);
    if (which == 0) {
      expected = theta_two_factors(1 / (q * q), 1 / q, 2);
    } else {
      // P = (1 - 2t)^2 cancels nothing; expand zeta = P(u) / ((1 - u)(1 - q u)) termwise.
      Rational u0 = 1 / (q * q);
      std::vector<Rational> p{Rational(1), Rational(-4), Rational(4)};
      for (int m = 0; m <= 2; ++m) {
        // theta^2 of u^m g(u) = sum_k binom(2,k) m^(2-k) theta^k g
        Rational part(0);
        for (int k = 0; k <= 2; ++k) {
          part += binomial(2, k) * power(Rational(m), 2 - k) * theta_two_factors(u0, q * u0, k);
        }
        expected += p[static_cast<std::size_t>(m)] * power(u0, m) * part;
      }
    }
    CHECK(v.per_component == power(q, 3 * (c.g - 1)) * expected);
    CHECK(v.eigenvalues[0] == std::vector<Rational>{-1});
    CHECK(volume_split(rd, pgl2_legs(P("x1^2", 2), Poly(2)), c, true).value == 2 * v.per_component);
    CHECK(volume_split(rd, pgl2_legs(Poly(2), Poly(2)), c, false).value == 0);
  }
  CHECK(volume_split(rd, pgl2_legs(P("x1^2", 2), Poly(2)), canonical_curve(0), false).value == Q("38/27"));
}

TEST_CASE("admissibility and minuscule checks") {
  auto rd = build_root_datum(Family::PGL, 2);
  CHECK_THROWS_AS(volume_split(rd, pgl2_legs(P("x1^2", 2), Poly(2), 1), canonical_curve(0), false),
                  PreconditionError);
  Coweight big(2);
  big << 1, -1;
  std::vector<LegSpec> legs{{big, P("x1^3", 2), P("x1^2", 2), 0}};
  CHECK_THROWS_AS(volume_split(rd, legs, canonical_curve(0), false), PreconditionError);
}

TEST_CASE("semisimple volumes ignore component labels") {
  auto rd = build_root_datum(Family::PGL, 2);
  auto legs = pgl2_legs(P("x1^2", 2), P("3*x1", 2));
  Rational base = volume_split(rd, legs, canonical_curve(1), false).value;
  legs[0].omega = 5;
  legs[1].omega = -2;
  CHECK(volume_split(rd, legs, canonical_curve(1), false).value == base);
}

TEST_CASE("GL_n closed form coefficients") {
  CHECK(gln_b_coefficients(0, {1, -1}, {0, 0}) == std::vector<Rational>{0, 1, -1});
  // (d - D1 + N)(d + 1 + D2 - N) at d = 2, D = (1, 0): (1 + N)(3 - N)
  CHECK(gln_b_coefficients(2, {1, -1}, {1, 0}) == std::vector<Rational>{3, 2, -1});
  CHECK_THROWS(volume_gln(2, 0, {1, 1}, {0, 0}, canonical_curve(0)));
}

TEST_CASE("GL_n closed form equals the split formula") {
  for (int which : {0, 1}) {
    auto c = canonical_curve(which);
    auto gl2 = build_root_datum(Family::GL, 2);
    CHECK(volume_gln(2, 0, {}, {}, c).value == volume_split(gl2, {}, c, false).value);
    for (int d : {0, 1}) {
      for (int d1 : {0, 1}) {
        for (int d2 : {0, 1}) {
          for (const auto& signs : {std::vector<int>{1, -1}, std::vector<int>{-1, 1}}) {
            std::vector<int> degrees{d1, d2};
            auto closed = volume_gln(2, d, signs, degrees, c);
            auto split = volume_split(gl2, gln_legs(2, d, signs, degrees), c, false);
            CHECK(closed.value == split.value);
          }
        }
      }
    }
  }
}

TEST_CASE("eta prime enters only through its integral") {
  auto gl3 = build_root_datum(Family::GL, 3);
  auto legs = gln_legs(3, 1, {1, -1}, {1, 0});
  Rational base = volume_split(gl3, legs, canonical_curve(0), false).value;
  Poly e1 = gl3.fundamental_invariants[0].poly;
  legs[0].eta_prime += e1 * P("x1", 3) * Q("5/2");
  legs[1].eta_prime += e1 * e1 * Q("-1/3");
  CHECK(volume_split(gl3, legs, canonical_curve(0), false).value == base);
}

TEST_CASE("unitary volumes by two routes") {
  auto c0 = canonical_curve(0);
  auto cover = constant_field_cover(c0);
  auto u = volume_unitary(1, 2, 0, cover);
  // L(t, chi) = 1 / ((1 + t)(1 + 2t)); the leg operators see t^2 / 2, so theta = 2 theta_u.
  Rational expected = Q("1/2") * 4 * theta_two_factors(Q("-1/2"), Rational(-1), 2);
  CHECK(u.result.per_component == expected);
  CHECK(u.result.per_component == Q("4/27"));
  CHECK(u.result.value == Q("8/27"));
  CHECK(u.series_per_component == u.result.per_component);
  for (int which : {0, 1}) {
    auto cv = constant_field_cover(canonical_curve(which));
    for (int n = 1; n <= 3; ++n) {
      for (int r : {0, 2, 4}) {
        for (int deg : {0, 1}) {
          auto res = volume_unitary(n, r, deg, cv);
          CHECK(res.series_per_component == res.result.per_component);
        }
      }
    }
  }
  auto r0 = volume_unitary(2, 0, 0, cover);
  Rational l1 = cover.l_chi.rational_function()(Q("1/2"));
  Rational l2 = zeta_curve(c0).rational_function()(Q("1/4"));
  CHECK(r0.result.value == 2 * power(Rational(2), -4) * l1 * l2);
  CHECK_THROWS_AS(volume_unitary(1, 1, 0, cover), PreconditionError);
}

TEST_CASE("unitary volumes over a geometric cover") {
  // q = 4, g = 2 with P = (1 - 2t)^4 and L(t, chi) = 1 - 4t^2.
  auto base = make_curve(4, 2, upoly({1, -8, 24, -32, 16}));
  auto cover = geometric_cover(base, upoly({1, 0, -4}));
  auto res = volume_unitary(2, 2, 1, cover);
  CHECK(res.series_per_component == res.result.per_component);
  CHECK_THROWS_AS(geometric_cover(base, upoly({1, 1, 1})), PreconditionError);
}

TEST_CASE("Colmez forms agree") {
  auto c0 = canonical_curve(0);
  auto triv = make_group("trivial");
  auto sys = trivial_system(c0);
  ColmezInput in{2, {1, 1}, {0, 0}, &triv, &sys};
  auto res = volume_colmez(in);
  CHECK(res.proposition_sum == Q("-38/3"));
  CHECK(res.theorem_sum == res.proposition_sum);
  CHECK(res.reversed_bracket_sum == 10);
  CHECK(res.proposition.value == res.theorem.value);

  // Trivial group: every constant is the zeta log derivative.
  for (int d = 2; d <= 3; ++d) CHECK(colmez_constant(in, 0, 1, d) == log_derivative_at(zeta_curve(c0), d));

  CHECK(colmez_multinomial_offdiagonal(2, 2, 2) == 1);
  CHECK(colmez_multinomial_diagonal(2, 2) == 3);

  auto z2 = make_group("z2");
  auto zsys = build_artin_system("z2", 1, 4, {{"triv", 1, upoly({1, -4, 4})}, {"sign", 1, upoly({1})}});
  ColmezInput zin{2, {1, -1}, {0, 1}, &z2, &zsys};
  auto zres = volume_colmez(zin);
  CHECK(zres.proposition_sum == zres.theorem_sum);
  CHECK(zres.gX == 1);

  auto y2 = build_artin_system("z2", 2, 4, {{"triv", 1, upoly({1, -8, 24, -32, 16})}, {"sign", 1, upoly({1, 0, -4})}});
  for (int trial = 0; trial < 10; ++trial) {
    int n = test::uniform(2, 3);
    int r = test::uniform(1, 4);
    std::vector<int> signs, sigma;
    for (int i = 0; i < r; ++i) {
      signs.push_back(test::uniform(0, 1) ? 1 : -1);
      sigma.push_back(test::uniform(0, 1));
    }
    ColmezInput rin{n, signs, sigma, &z2, &y2};
    auto rr = volume_colmez(rin);
    CHECK(rr.proposition_sum == rr.theorem_sum);
    CHECK(rr.gX == 3);
  }
}
