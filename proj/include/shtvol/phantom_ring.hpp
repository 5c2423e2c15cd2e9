// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "shtvol/curve_cohomology.hpp"
#include "shtvol/volume.hpp"
#include "shtvol/weyl_poly.hpp"

namespace shtvol {

// Element of H*(X)^{(x) k} (x) (x)_i R^{W_mu_i}: cohomology key per factor -> polynomial in the leg variables.
using PhantomElement = std::map<std::vector<int>, Poly>;

// The ambient ring tilde C. Leg i owns the variables [i m, (i + 1) m) where m is the number of
// independent coordinates of the root datum. A leg's cohomology factor is the leg itself, or the
// single shared factor when the ambient is built over one copy of H*(X).
class PhantomAmbient {
 public:
  PhantomAmbient(RootDatum rd, std::vector<Coweight> mu, CurveCohomology h, bool shared_factor);

  const RootDatum& root_datum() const { return rd_; }
  const std::vector<Coweight>& coweights() const { return mu_; }
  const CurveCohomology& cohomology() const { return h_; }
  int legs() const { return static_cast<int>(mu_.size()); }
  int factors() const { return shared_ ? 1 : legs(); }
  int factor_of(int leg) const { return shared_ ? 0 : leg; }
  int vars_per_leg() const { return m_; }
  int nvars() const { return legs() * m_; }
  int flag_dim(int leg) const { return flag_dims_.at(static_cast<std::size_t>(leg)); }

  PhantomElement zero() const { return {}; }
  PhantomElement one() const;
  // [f]_i for f in root-datum coordinates (normal form taken first).
  PhantomElement leg_poly(int leg, const Poly& f) const;
  // Class of H*(X^k) placed on the given factors.
  PhantomElement cohomology_class(const KunnethClass& c, const std::vector<int>& positions) const;
  PhantomElement xi_at(int leg) const;

  PhantomElement multiply(const PhantomElement& a, const PhantomElement& b) const;
  PhantomElement frobenius(const PhantomElement& a) const;
  int degree(const PhantomElement& a) const;  // -1 for zero; throws when not homogeneous

  // Basis of R^{W_mu_i} in polynomial degree p, in root-datum coordinates (normal form).
  const std::vector<Poly>& leg_invariants(int leg, int p) const;
  std::vector<PhantomElement> basis(int degree) const;

 private:
  RootDatum rd_;
  std::vector<Coweight> mu_;
  CurveCohomology h_;
  bool shared_;
  int m_;
  std::vector<int> flag_dims_;
  std::vector<std::vector<WeylElement>> stabilizers_;
  mutable std::map<std::pair<int, int>, std::vector<Poly>> invariant_cache_;
};

PhantomElement element_sum(const PhantomElement& a, const PhantomElement& b, const Rational& scale = Rational(1));
PhantomElement element_scale(const PhantomElement& a, const Rational& s);

struct GradedPiece {
  int degree = 0;
  std::vector<PhantomElement> ambient_basis;
  std::map<std::pair<std::vector<int>, Monomial>, int> coordinates;
  int ideal_rank = 0;
  std::vector<int> quotient_basis;  // indices into ambient_basis
  MatrixQ columns;                  // ideal basis followed by quotient basis, in coordinates
  MatrixQ solver;                   // left inverse of columns
};

struct PhantomRing {
  std::shared_ptr<const PhantomAmbient> ambient;
  std::vector<PhantomElement> generators;
  int top_degree = 0;
  std::vector<GradedPiece> pieces;  // indexed by degree
  PhantomElement top_class;
  std::optional<Rational> prefactor;  // volume functional = prefactor * integral

  int max_degree() const { return static_cast<int>(pieces.size()) - 1; }
  std::vector<int> hilbert() const;
  int dimension() const;
  // Coordinates in the quotient basis of a homogeneous element.
  VectorQ reduce(const PhantomElement& a) const;
  bool in_ideal(const PhantomElement& a) const;
  PhantomElement basis_element(int degree, int j) const;
  // Linear functional on the top degree, normalized to 1 on top_class.
  Rational integral(const PhantomElement& a) const;
  Rational volume(const PhantomElement& a) const;
  MatrixQ pairing_matrix(int degree) const;
  bool perfect() const;
  MatrixQ frobenius_matrix(int degree) const;
};

// Quotient of the ambient by the ideal generated by the given elements, in degrees 0..max_degree.
PhantomRing build_quotient(std::shared_ptr<const PhantomAmbient> ambient, std::vector<PhantomElement> generators,
                           int max_degree);

// D_i(f) for f in R^W of degree 2d > 2.
PhantomElement relation_d(const PhantomAmbient& amb, int leg, const Poly& f);
// D*_i(f) for f in R^W of degree 2 (reductive groups).
PhantomElement relation_d_star(const PhantomAmbient& amb, int leg, const Poly& f, const Coweight& omega);
std::vector<PhantomElement> relation_generators(const PhantomAmbient& amb, const std::optional<Coweight>& omega);

// Poincare polynomial of G/P_mu in t (index = cohomological degree).
std::vector<int> flag_poincare(const RootDatum& rd, const Coweight& mu);
std::vector<int> expected_hilbert(const PhantomAmbient& amb);
// Lift of the point class of G/P_mu: an element of R^{W_mu} of degree D_mu with flag integral 1.
Poly point_class_lift(const PhantomAmbient& amb, int leg);

PhantomRing build_phantom(const RootDatum& rd, const std::vector<Coweight>& mu, const CurveData& curve,
                          const std::optional<Coweight>& omega = std::nullopt);

struct PhantomReport {
  std::vector<int> hilbert, expected;
  int dimension = 0;
  int expected_dimension = 0;
  std::vector<int> reduction_hilbert, reduction_expected;
  bool free = false;
  bool top_one_dimensional = false;
  bool vanishes_above_top = false;
  bool frobenius_eigen = false;  // every generator is a Frobenius eigenvector of weight q^d
  bool frobenius_pure = false;   // for g = 0: Frobenius acts by q^{k/2} on degree k
  bool perfect = false;
  std::optional<Rational> volume_top;
};
PhantomReport phantom_report(const PhantomRing& ring);

// The integrand prod_i ([eta_i]_i + [xi]_i [eta'_i]_i).
PhantomElement volume_integrand(const PhantomAmbient& amb, const std::vector<LegSpec>& legs);

// D_i(f g) lies in the ideal spanned by D_j(f), D_j(g) in its degree.
bool difg_holds(const PhantomAmbient& amb, int leg, const Poly& f, const Poly& g);

struct SigmaRing {
  PhantomRing ring;
  ColmezInput input;
  // constants[d][i][i'] = c_{i,i'}(d) for the invariant degrees d.
  std::map<int, std::vector<std::vector<Rational>>> constants;
  std::vector<Poly> t;  // t_i in root-datum coordinates
};

std::vector<Coweight> colmez_coweights(int n, const std::vector<int>& signs);
SigmaRing build_phantom_sigma(const ColmezInput& in);
PhantomElement colmez_eta(const SigmaRing& s);
// Image of the leg monomial t_1^{e_1} ... t_r^{e_r}.
PhantomElement colmez_monomial(const SigmaRing& s, const std::vector<int>& exponents);

}  // namespace shtvol
