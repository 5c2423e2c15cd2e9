// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include <doctest.h>

#include <map>
#include <optional>
#include <tuple>

#include "shtvol/flag_calculus.hpp"
#include "support.hpp"

using namespace shtvol;
using shtvol::test::P;
using shtvol::test::Q;

namespace {

Coweight coweight(std::initializer_list<Rational> values) {
  Coweight mu(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (const auto& v : values) mu(k++) = v;
  return mu;
}

Coweight unit(int n, int k = 0) {
  Coweight mu = Coweight::Zero(n);
  mu(k) = 1;
  return mu;
}

std::vector<Rational> random_point(int n) {
  std::vector<Rational> p;
  for (int k = 0; k < n; ++k) p.push_back(test::random_rational(23) + Rational(k) / 7);
  return p;
}

// Coset sum of f / r_mu evaluated at a point, term by term.
std::optional<Rational> coset_sum_at(const RootDatum& rd, const Coweight& mu, const Poly& f,
                                     const std::vector<Rational>& p) {
  Poly r = attracting_chern(rd, mu);
  Rational total(0);
  for (const auto& w : weyl_cosets(rd, mu)) {
    Rational den = act(rd, w, r).evaluate(p);
    if (den == 0) return std::nullopt;
    total += act(rd, w, f).evaluate(p) / den;
  }
  return total;
}

void check_against_coset_sum(const RootDatum& rd, const Coweight& mu, const Poly& f) {
  Poly pushed = integrate_flag(rd, mu, f);
  int checked = 0;
  while (checked < 4) {
    auto p = random_point(rd.coordinates);
    auto direct = coset_sum_at(rd, mu, f, p);
    if (!direct) continue;
    CHECK(pushed.evaluate(p) == *direct);
    ++checked;
  }
}

std::map<std::string, Rational> eigenweights_by_name(const EigenweightReport& rep) {
  std::map<std::string, Rational> out;
  for (int j = 0; j < rep.motive.size(); ++j) {
    out[rep.motive.names[static_cast<std::size_t>(j)]] = rep.eigenvalues[static_cast<std::size_t>(j)];
  }
  return out;
}

Poly random_invariant(const RootDatum& rd, int max_degree) {
  const int k = static_cast<int>(rd.fundamental_invariants.size());
  Poly e(k);
  for (int t = 0; t < 3; ++t) {
    std::vector<int> exps(static_cast<std::size_t>(k), 0);
    int left = test::uniform(0, max_degree);
    for (int tries = 0; tries < 6; ++tries) {
      int j = test::uniform(0, k - 1);
      int d = rd.fundamental_invariants[static_cast<std::size_t>(j)].degree / 2;
      if (d <= left) {
        ++exps[static_cast<std::size_t>(j)];
        left -= d;
      }
    }
    e.add_term(Monomial::from_exponents(exps), test::random_rational());
  }
  return substitute_invariants(rd, e);
}

Rational gl_length_two(int n, int i) {
  return binomial(2 * n - 2, n - 1) / n - binomial(2 * n - 3, n - i) + 2 * binomial(2 * n - 3, n - i - 1) -
         binomial(2 * n - 3, n - i - 2);
}

}  // namespace

TEST_CASE("gross motive degrees") {
  CHECK(gross_motive(build_root_datum(Family::GL, 4)).degrees == std::vector<int>{1, 2, 3, 4});
  CHECK(gross_motive(build_root_datum(Family::SOOdd, 3)).degrees == std::vector<int>{2, 4, 6});
  CHECK(gross_motive(build_root_datum(Family::SOEven, 4)).degrees == std::vector<int>{2, 4, 4, 6});
  CHECK(gross_motive(build_root_datum(Family::SOEven, 3)).degrees == std::vector<int>{2, 3, 4});
}

TEST_CASE("attracting Chern classes") {
  for (int n = 2; n <= 4; ++n) {
    auto rd = build_root_datum(Family::GL, n);
    Poly expected = Poly::constant(n, 1);
    for (int j = 1; j < n; ++j) expected *= Poly::variable(n, j) - Poly::variable(n, 0);
    CHECK(attracting_chern(rd, unit(n)) == expected);
    CHECK(flag_dimension(rd, unit(n)) == n - 1);
  }
  for (int m = 2; m <= 4; ++m) {
    auto rd = build_root_datum(Family::SOEven, m);
    Poly expected = Poly::constant(m, 1);
    for (int j = 1; j < m; ++j) expected *= Poly::variable(m, 0).pow(2) - Poly::variable(m, j).pow(2);
    CHECK(attracting_chern(rd, unit(m)) == expected);
  }
  CHECK(attracting_chern(build_root_datum(Family::GL, 3), Coweight::Zero(3)) == Poly::constant(3, 1));
}

TEST_CASE("pushforward along flag varieties") {
  auto gl2 = build_root_datum(Family::GL, 2);
  CHECK(integrate_flag(gl2, unit(2), P("x1^2", 2)) == P("-x1 - x2", 2));

  std::vector<std::pair<RootDatum, Coweight>> cases{
      {build_root_datum(Family::GL, 3), unit(3)},
      {build_root_datum(Family::GL, 4), coweight({1, 1, 0, 0})},
      {build_root_datum(Family::PGL, 3), coweight({Q("2/3"), Q("-1/3"), Q("-1/3")})},
      {build_root_datum(Family::SOOdd, 2), unit(2)},
      {build_root_datum(Family::SOEven, 3), unit(3)}};
  for (const auto& [rd, mu] : cases) {
    Poly r = attracting_chern(rd, mu);
    CHECK(integrate_flag(rd, mu, r) == Poly::constant(rd.coordinates, static_cast<long>(weyl_cosets(rd, mu).size())));
    CHECK(r.degree() == flag_dimension(rd, mu));
    if (r.degree() > 0) CHECK(integrate_flag(rd, mu, casimir_direction(rd, mu).pow(r.degree() - 1)).is_zero());
  }

  auto so4 = build_root_datum(Family::SOEven, 2);
  check_against_coset_sum(so4, unit(2), P("x1^2*x2", 2));
  CHECK(integrate_flag(so4, unit(2), P("x1^2", 2)) == Poly::constant(2, 2));
  check_against_coset_sum(so4, unit(2), P("x1^5 - 3*x1*x2^2", 2));
  check_against_coset_sum(build_root_datum(Family::GL, 4), coweight({1, 1, 0, 0}), P("x1^3*x2^3*(x3 + x4) + x1*x2*x3^2*x4^2", 4));

  CHECK_THROWS_AS(integrate_flag(build_root_datum(Family::GL, 3), unit(3), P("x2^3", 3)), PreconditionError);
}

TEST_CASE("pushforward is linear over invariants") {
  std::vector<std::pair<RootDatum, Coweight>> cases{{build_root_datum(Family::GL, 3), unit(3)},
                                                    {build_root_datum(Family::SOOdd, 2), unit(2)},
                                                    {build_root_datum(Family::SOEven, 3), unit(3)}};
  for (const auto& [rd, mu] : cases) {
    const int n = rd.coordinates;
    for (int trial = 0; trial < 5; ++trial) {
      Poly g = random_invariant(rd, 3);
      Poly f = Poly::variable(n, 0).pow(test::uniform(2, 6)) * random_invariant(rd, 2);
      CHECK(integrate_flag(rd, mu, g * f) == g * integrate_flag(rd, mu, f));
    }
  }
}

TEST_CASE("interpolated pushforward agrees with the exact sum") {
  std::vector<std::tuple<RootDatum, Coweight, Poly>> cases{
      {build_root_datum(Family::GL, 2), unit(2), P("x1^2", 2)},
      {build_root_datum(Family::GL, 3), unit(3), P("x1^5", 3)},
      {build_root_datum(Family::GL, 4), coweight({1, 1, 0, 0}), P("(x1 + x2)^5", 4)},
      {build_root_datum(Family::SOOdd, 3), unit(3), P("x1^6", 3)},
      {build_root_datum(Family::SOEven, 2), unit(2), P("x1^2*x2", 2)},
      {build_root_datum(Family::SOEven, 3), unit(3), P("x1^5*x2*x3", 3)}};
  std::uint64_t seed = 7;
  for (const auto& [rd, mu, f] : cases) {
    CHECK(integrate_flag_interpolated(rd, mu, f, seed++) == integrate_flag(rd, mu, f));
  }
}

TEST_CASE("nabla on generators") {
  for (int n = 2; n <= 4; ++n) {
    auto rd = build_root_datum(Family::GL, n);
    Poly eta = Poly::variable(n, 0).pow(n);
    Rational sign = n % 2 == 1 ? 1 : -1;
    for (const auto& inv : rd.fundamental_invariants) CHECK(nabla(rd, unit(n), eta, inv.poly) == sign * inv.poly);
    CHECK(nabla(rd, unit(n), eta, Poly::constant(n, 1)).is_zero());
  }
  for (int m = 1; m <= 3; ++m) {
    auto rd = build_root_datum(Family::SOOdd, m);
    Poly eta = Poly::variable(m, 0).pow(2 * m);
    for (const auto& inv : rd.fundamental_invariants) CHECK(nabla(rd, unit(m), eta, inv.poly) == Rational(-4) * inv.poly);
  }
}

TEST_CASE("nabla is a derivation") {
  auto rd = build_root_datum(Family::GL, 3);
  Poly eta = P("(x1 + x2)^3", 3);
  Coweight mu = coweight({1, 1, 0});
  for (int trial = 0; trial < 5; ++trial) {
    Poly f = random_invariant(rd, 3);
    Poly g = random_invariant(rd, 3);
    CHECK(nabla(rd, mu, eta, f * g) == nabla(rd, mu, eta, f) * g + f * nabla(rd, mu, eta, g));
  }
}

TEST_CASE("Casimir directions") {
  CHECK(casimir_direction(build_root_datum(Family::GL, 4), coweight({1, 1, 0, 0})) == P("x1 + x2", 4));
  CHECK(casimir_direction(build_root_datum(Family::SOOdd, 3), unit(3)) == P("x1", 3));
  CHECK(casimir_direction(build_root_datum(Family::GL, 3), Coweight::Zero(3)).is_zero());
}

TEST_CASE("eigenweight examples") {
  auto gl3 = build_root_datum(Family::GL, 3);
  auto rep = eigenweight_report(gl3, coweight({1, 1, 0}), P("(x1 + x2)^3", 3));
  REQUIRE(rep.rational_spectrum);
  CHECK(rep.eigenvalues == std::vector<Rational>{4, 1, 1});

  for (int m = 2; m <= 4; ++m) {
    auto rd = build_root_datum(Family::SOEven, m);
    auto r = eigenweight_report(rd, unit(m), Poly::variable(m, 0).pow(2 * m - 1));
    REQUIRE(r.rational_spectrum);
    for (const auto& [name, value] : eigenweights_by_name(r)) CHECK(value == (name == "Pf" ? 2 : 4));
  }

  auto pgl2 = build_root_datum(Family::PGL, 2);
  auto p = eigenweight_report(pgl2, coweight({Q("1/2"), Q("-1/2")}), P("x1^2", 2));
  REQUIRE(p.eigenvalues.size() == 1);
  CHECK(p.eigenvalues[0] == -1);
}

TEST_CASE("length-two eigenweights for GL_n") {
  for (int n = 3; n <= 5; ++n) {
    auto rd = build_root_datum(Family::GL, n);
    Coweight mu = Coweight::Zero(n);
    mu(0) = mu(1) = 1;
    Poly eta = casimir_direction(rd, mu).pow(2 * n - 3);
    auto rep = eigenweight_report(rd, mu, eta);
    REQUIRE(rep.rational_spectrum);
    for (int i = 1; i <= n; ++i) CHECK(rep.eigenvalues[static_cast<std::size_t>(i - 1)] == gl_length_two(n, i));
  }
}

TEST_CASE("eigenweights under negation and Weyl conjugation") {
  std::vector<std::pair<RootDatum, Coweight>> cases{{build_root_datum(Family::GL, 3), unit(3)},
                                                    {build_root_datum(Family::GL, 4), coweight({1, 1, 0, 0})},
                                                    {build_root_datum(Family::SOOdd, 2), unit(2)},
                                                    {build_root_datum(Family::SOEven, 3), unit(3)}};
  for (const auto& [rd, mu] : cases) {
    int top = flag_dimension(rd, mu) + 1;
    Poly eta = casimir_direction(rd, mu).pow(top);
    auto base = eigenweight_report(rd, mu, eta).eigenvalues;
    Coweight neg = -mu;
    CHECK(eigenweight_report(rd, neg, casimir_direction(rd, neg).pow(top)).eigenvalues == base);
    for (const auto& w : weyl_group(rd)) {
      if (test::uniform(0, 3) != 0) continue;
      CHECK(eigenweight_report(rd, act(w, mu), act(rd, w, eta)).eigenvalues == base);
    }
  }
}

TEST_CASE("degree constants") {
  for (int n = 2; n <= 4; ++n) {
    auto rd = build_root_datum(Family::GL, n);
    Rational omega(5);
    Rational big_d(7);
    Poly eta = Poly::variable(n, 0).pow(n);
    Poly eta_prime = Poly::variable(n, 0).pow(n - 1) * -big_d;
    auto c = degree_constants(rd, unit(n), eta, eta_prime, omega);
    CHECK(c.d_omega == (n % 2 == 1 ? 1 : -1) * omega);
    CHECK(c.d_prime == (n % 2 == 0 ? 1 : -1) * big_d);
  }
  auto pgl2 = build_root_datum(Family::PGL, 2);
  auto c = degree_constants(pgl2, coweight({Q("1/2"), Q("-1/2")}), P("x1^2", 2), P("3*x1", 2), Rational(4));
  CHECK(c.d_omega == 0);
  CHECK(c.d_prime == -3);
  CHECK_THROWS_AS(degree_constants(pgl2, coweight({Q("1/2"), Q("-1/2")}), P("x1", 2), P("x1", 2), 0),
                  PreconditionError);
}
