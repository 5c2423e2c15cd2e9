// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shtvol/lfunctions.hpp"

namespace shtvol {

// H*(X) with basis 1, zeta_1..zeta_2g, xi (indices 0, 1..2g, 2g+1).
struct CurveCohomology {
  Rational q;
  int g = 0;
  MatrixQ frobenius_h1;  // column a is the image of zeta_a
  MatrixQ pairing;       // J_ab = int zeta_a zeta_b

  int size() const { return 2 * g + 2; }
  int xi() const { return 2 * g + 1; }
  int degree(int b) const { return b == 0 ? 0 : (b == xi() ? 2 : 1); }
  // Product of two basis classes as (coefficient, basis index), or nothing when it vanishes.
  std::optional<std::pair<Rational, int>> multiply(int a, int b) const;
  Rational integral(int b) const { return b == xi() ? Rational(1) : Rational(0); }
  // Frobenius on all of H*(X): q^0 on H^0, F on H^1, q on H^2.
  MatrixQ frobenius() const;
  // Frobenius^{-1} twisted by q^d: q^d on H^0, q^d F^{-1} on H^1, q^{d-1} on H^2.
  MatrixQ twisted_inverse(int d) const;
};

CurveCohomology curve_cohomology(const CurveData& curve);
// H*(P^1)-like algebra {1, xi}: the even part used by restricted rings.
CurveCohomology even_cohomology(const Rational& q);

// Element of H*(X^k) in the Kunneth basis: key = basis index per factor.
struct KunnethClass {
  int factors = 0;
  std::map<std::vector<int>, Rational> terms;

  void add(const std::vector<int>& key, const Rational& c);
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const KunnethClass&, const KunnethClass&) = default;
};

int kunneth_degree(const CurveCohomology& h, const std::vector<int>& key);
// Koszul sign for (u_1 (x) ... (x) u_k)(v_1 (x) ... (x) v_k).
int koszul_sign(const CurveCohomology& h, const std::vector<int>& a, const std::vector<int>& b);
KunnethClass kunneth_product(const CurveCohomology& h, const KunnethClass& a, const KunnethClass& b);
KunnethClass kunneth_sum(const KunnethClass& a, const KunnethClass& b, const Rational& scale = Rational(1));
Rational kunneth_integral(const CurveCohomology& h, const KunnethClass& a);
// Apply a linear map of H*(X) (columns = images of basis classes) on one factor.
KunnethClass apply_on_factor(const CurveCohomology& h, const KunnethClass& a, int factor, const MatrixQ& op);
// Place a class of H*(X^k) on the chosen factors of X^m (others carry 1).
KunnethClass place(const KunnethClass& a, int total_factors, const std::vector<int>& positions);
// Pull back along the diagonal X -> X x X.
KunnethClass diagonal_restriction(const CurveCohomology& h, const KunnethClass& a);

KunnethClass diagonal_class(const CurveCohomology& h);
// ((q^d phi^{-1} - 1)^{-1} (x) id)[Delta], d not in {0, 1}.
KunnethClass xi_class(const CurveCohomology& h, int d);
// (id (x) (q^{d-1} phi - 1)^{-1})[Delta]: the second route to the same class.
KunnethClass xi_class_right(const CurveCohomology& h, int d);
// Eigenbasis form; needs Frobenius on H^1 diagonalizable over Q.
KunnethClass xi_class_components(const CurveCohomology& h, int d);
KunnethClass xi_star1(const CurveCohomology& h);
KunnethClass xi_star0(const CurveCohomology& h);
KunnethClass tangent_chern(const CurveCohomology& h);

struct XiProductCheck {
  int d, e;
  std::string branch;
  bool holds;
};
// Both sides of the triple-product identity for Xi classes over X^3 (or X^2 when i = i').
std::vector<XiProductCheck> xi_product_identity(const CurveCohomology& h, int d, int e);

}  // namespace shtvol
