// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shtvol/flag_calculus.hpp"
#include "shtvol/polynomial.hpp"

namespace shtvol {

// numerator / base^power in the variable t
class RationalFunction {
 public:
  RationalFunction() : num_{Rational(0)}, base_{Rational(1)}, power_(0) {}
  RationalFunction(UPolyQ numerator, UPolyQ base, int power);
  static RationalFunction polynomial(UPolyQ p) { return RationalFunction(std::move(p), UPolyQ{Rational(1)}, 0); }

  const UPolyQ& numerator() const { return num_; }
  const UPolyQ& base() const { return base_; }
  int power() const { return power_; }

  Rational operator()(const Rational& t) const;
  RationalFunction theta() const;
  RationalFunction theta(int k) const;
  // f(c t^m)
  RationalFunction substitute(const Rational& c, int m = 1) const;
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);

  // Taylor coefficients of f(e^sigma) at sigma = 0 up to the given order.
  std::vector<Rational> exponential_series(int order) const;

 private:
  UPolyQ num_;
  UPolyQ base_;
  int power_;
};

struct CurveData {
  Rational q;
  int g = 0;
  UPolyQ h1;                          // P(t), degree 2g, P(0) = 1
  std::optional<MatrixQ> frobenius;  // action on H^1, 2g x 2g
  std::optional<MatrixQ> pairing;    // J_ab = int zeta_a zeta_b
};

CurveData make_curve(const Rational& q, int g, const UPolyQ& h1, std::optional<MatrixQ> frobenius = std::nullopt,
                     std::optional<MatrixQ> pairing = std::nullopt);
// 0: (q=2, g=0, P=1); 1: (q=4, g=1, P=1-4t+4t^2, Frobenius 2I).
CurveData canonical_curve(int which);
void validate_curve(const CurveData& c);
bool weil_bound_holds(const CurveData& c, double tolerance = 1e-9);

// Numerator over (1 - t)^pole_one (1 - q t)^pole_q.
struct LSeries {
  Rational q;
  UPolyQ numerator;
  UPolyQ denominator{Rational(1)};
  int pole_one = 0;
  int pole_q = 0;

  RationalFunction rational_function() const;
  // L(q^{-d} t) with the factors vanishing at t = 1 removed when starred.
  RationalFunction shifted(int d, bool starred) const;
};

LSeries zeta_curve(const CurveData& c);
RationalFunction theta_derivative(const LSeries& l, int k);
// (theta L / L)(q^{-d})
Rational log_derivative_at(const LSeries& l, int d);
// Tr((q^d phi^{-1} - 1)^{-1} | H^*(X)) with the Koszul sign on H^1.
Rational log_derivative_trace(const CurveData& c, int d);

struct LegOperator {
  Rational c;
  std::vector<Rational> eps;  // per motive line
};

// (prod_j (c_j + sum_i eps_i(j) theta_i)) L*(t_1..t_n) at t = 1.
Rational apply_leg_operators(const CurveData& curve, const GrossMotive& motive, const std::vector<LegOperator>& legs);
// Same with every line carrying its own L-series.
Rational apply_leg_operators(const std::vector<RationalFunction>& factors, const std::vector<LegOperator>& legs);

struct ArtinRep {
  std::string name;
  int dim;
  UPolyQ numerator;
};

struct ArtinLSystem {
  std::string group;
  int gY;
  Rational q;
  std::vector<ArtinRep> reps;  // reps[0] is the trivial representation

  LSeries l_series(std::size_t rho) const;
  Rational log_derivative(std::size_t rho, int d) const;
  // sum_rho a_rho ell_rho(d)
  Rational log_derivative(const std::vector<Rational>& coefficients, int d) const;
  // Numerator of prod_rho L_rho^{dim rho}.
  UPolyQ product_numerator() const;
};

ArtinLSystem build_artin_system(const std::string& group, int gY, const Rational& q, std::vector<ArtinRep> reps);
// Sign epsilon with t^D q^{D/2} P(1/(q t)) = epsilon P(t), or nothing.
std::optional<int> functional_equation_sign(const UPolyQ& p, const Rational& q);

}  // namespace shtvol
