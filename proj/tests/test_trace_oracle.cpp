// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include <doctest.h>

#include <cmath>

#include "shtvol/trace_oracle.hpp"
#include "support.hpp"

using namespace shtvol;
using shtvol::test::P;
using shtvol::test::Q;

namespace {

std::vector<LegSpec> pgl2_legs() {
  Coweight mu(2);
  mu << Q("1/2"), Q("-1/2");
  return {{mu, P("x1^2", 2), Poly(2), 0}, {mu, P("x1^2", 2), Poly(2), 0}};
}

long dim_bun(const RootDatum& rd, const CurveData& c) { return static_cast<long>(c.g - 1) * rd.dim_g; }

}  // namespace

TEST_CASE("monomial basis counts") {
  auto c0 = canonical_curve(0);
  auto pgl2 = build_root_datum(Family::PGL, 2);
  auto basis = build_monomial_basis(c0, gross_motive(pgl2), 8);
  REQUIRE(basis.generators.size() == 2);
  for (int i = 0; i <= 8; ++i) {
    int count = 0;
    for (int a = 0; 4 * a <= i; ++a) {
      if ((i - 4 * a) % 2 == 0) ++count;
    }
    CHECK(static_cast<int>(basis.by_degree[static_cast<std::size_t>(i)].size()) == count);
  }

  // The degree-one line never pairs with the fundamental class.
  auto gl1 = build_root_datum(Family::GL, 1);
  auto b1 = build_monomial_basis(canonical_curve(1), gross_motive(gl1), 6);
  for (const auto& g : b1.generators) CHECK_FALSE(g.slot == 3);
  CHECK(b1.generators.size() == 3);
  for (int i = 0; i <= 6; ++i) {
    for (const auto& e : b1.by_degree[static_cast<std::size_t>(i)]) {
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (b1.generators[k].odd) CHECK(e[k] <= 1);
      }
    }
  }
}

TEST_CASE("Frobenius on generators") {
  auto c0 = canonical_curve(0);
  auto pgl2 = build_root_datum(Family::PGL, 2);
  auto motive = gross_motive(pgl2);
  auto ops = build_operator(c0, motive, {}, 4);
  auto basis = build_monomial_basis(c0, motive, 4);
  for (std::size_t k = 0; k < basis.by_degree[2].size(); ++k) {
    // Degree 2 is spanned by the fundamental-class generator of the degree-two line.
    CHECK(ops[2].frobenius_inverse(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) == Q("1/2"));
  }
  CHECK(ops[4].frobenius_inverse.rows() == 2);
}

TEST_CASE("trace without legs converges to the mass") {
  auto c0 = canonical_curve(0);
  auto sl2 = build_root_datum(Family::SL, 2);
  auto run = truncated_trace(c0, gross_motive(sl2), {}, 60, dim_bun(sl2, c0));
  CHECK(std::abs(to_double(run.value - Q("1/3"))) < 1e-8);
  CHECK(run.tail_bound < 1e-8);
  CHECK(agrees(run, Q("1/3")));
  auto longer = truncated_trace(c0, gross_motive(sl2), {}, 62, dim_bun(sl2, c0));
  CHECK(std::abs(to_double(longer.value - run.value)) <= std::max(run.tail_bound, 1e-15));
}

TEST_CASE("trace with two legs matches the closed form") {
  auto pgl2 = build_root_datum(Family::PGL, 2);
  for (int which : {0, 1}) {
    auto c = canonical_curve(which);
    auto legs = pgl2_legs();
    Rational closed = volume_split(pgl2, legs, c, false).per_component;
    auto run = truncated_trace(c, gross_motive(pgl2), trace_legs(pgl2, legs), 60, dim_bun(pgl2, c));
    CHECK(std::abs(to_double(run.value - closed)) <= 1e-6 * std::abs(to_double(closed)));
    CHECK(agrees(run, closed));
    CHECK(run.decay_ratio < 0.95);
  }
}

TEST_CASE("factorized and compact-support traces") {
  auto c0 = canonical_curve(0);
  for (auto rd : {build_root_datum(Family::PGL, 2), build_root_datum(Family::PGL, 3), build_root_datum(Family::GL, 2)}) {
    auto motive = gross_motive(rd);
    std::vector<TraceLeg> legs;
    if (rd.family == Family::PGL && rd.coordinates == 2) legs = trace_legs(rd, pgl2_legs());
    auto run = truncated_trace(c0, motive, legs, 30, dim_bun(rd, c0), {true});
    CHECK(run.value == factorized_trace(c0, motive, legs, 30, dim_bun(rd, c0)));
    CHECK(run.value == compact_support_trace(c0, motive, legs, 30, dim_bun(rd, c0)));
  }
  auto c1 = canonical_curve(1);
  auto pgl2 = build_root_datum(Family::PGL, 2);
  auto legs = trace_legs(pgl2, pgl2_legs());
  auto run = truncated_trace(c1, gross_motive(pgl2), legs, 24, dim_bun(pgl2, c1));
  CHECK(run.value == compact_support_trace(c1, gross_motive(pgl2), legs, 24, dim_bun(pgl2, c1)));
}

TEST_CASE("GL_2 trace agrees with both closed forms") {
  auto gl2 = build_root_datum(Family::GL, 2);
  for (int which : {0, 1}) {
    auto c = canonical_curve(which);
    for (int d1 : {0, 1}) {
      for (int d2 : {0, 1}) {
        std::vector<int> signs{1, -1};
        std::vector<int> degrees{d1, d2};
        Rational closed = volume_gln(2, 0, signs, degrees, c).value;
        auto legs = trace_legs(gl2, gln_legs(2, 0, signs, degrees));
        auto run = truncated_trace(c, gross_motive(gl2), legs, 60, dim_bun(gl2, c));
        CHECK(agrees(run, closed));
      }
    }
  }
}
