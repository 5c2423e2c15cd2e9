// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#pragma once

#include <string>
#include <vector>

#include "shtvol/polynomial.hpp"

namespace shtvol {

enum class Family { GL, SL, PGL, SOOdd, SOEven };

struct Invariant {
  std::string name;
  Poly poly;
  int degree;  // cohomological degree 2 d_i
};

using Coweight = VectorQ;
using Root = Eigen::VectorXi;

struct RootDatum {
  Family family;
  int rank;
  int coordinates;
  std::vector<Root> roots;
  std::vector<Root> simple_roots;
  Eigen::MatrixXi coroot_lattice;  // basis vectors as columns
  std::vector<Invariant> fundamental_invariants;
  int pi1_order;
  int dim_g;

  bool reduces_e1() const { return family == Family::SL || family == Family::PGL; }
  bool is_semisimple() const { return family != Family::GL; }
  std::string label() const;
};

RootDatum build_root_datum(Family family, int n);
// Accepts "gl:n", "sl:n", "pgl:n", "so-odd:m", "so-even:m".
RootDatum parse_root_datum(const std::string& spec);

Rational pairing(const Root& alpha, const Coweight& mu);
bool in_coweight_lattice(const RootDatum& rd, const Coweight& mu);
bool in_coroot_lattice(const RootDatum& rd, const Coweight& mu);
bool is_minuscule(const RootDatum& rd, const Coweight& mu);
bool is_dominant(const RootDatum& rd, const Coweight& mu);
Poly root_form(const Root& alpha, int nvars);

// Signed permutation: w e_k = sign[k] e_{perm[k]}.
struct WeylElement {
  std::vector<int> perm;
  std::vector<int> sign;

  static WeylElement identity(int n);
  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);
  friend bool operator==(const WeylElement&, const WeylElement&) = default;
  WeylElement inverse() const;
};

void validate_weyl_element(const RootDatum& rd, const WeylElement& w);
WeylElement reflection(const RootDatum& rd, const Root& alpha);
Coweight act(const WeylElement& w, const Coweight& mu);
// x_k -> sign[k] x_{perm[k]} on the first rd.coordinates variables; others are fixed.
Poly act(const RootDatum& rd, const WeylElement& w, const Poly& f);
std::vector<WeylElement> weyl_cosets(const RootDatum& rd, const Coweight& mu);
std::vector<WeylElement> weyl_group(const RootDatum& rd);

// sum_k mu_k d/dx_k
Poly partial_derivative(const Poly& f, const Coweight& mu);

bool is_weyl_invariant(const RootDatum& rd, const Poly& f);
bool is_stabilizer_invariant(const RootDatum& rd, const Coweight& mu, const Poly& f);

// Reduction modulo e1 for SL/PGL via x_n = -(x_1 + ... + x_{n-1}); identity otherwise.
Poly normal_form(const RootDatum& rd, const Poly& f);

// Coordinates of an invariant polynomial in the fundamental invariants; the
// returned polynomial has one variable per fundamental invariant.
Poly express_in_invariants(const RootDatum& rd, const Poly& f);
Poly substitute_invariants(const RootDatum& rd, const Poly& expression);
// Linear part of an expression in the fundamental invariants.
VectorQ linear_part(const RootDatum& rd, const Poly& expression);
std::vector<std::string> invariant_names(const RootDatum& rd);

Poly elementary_symmetric(int nvars, int k, int first = 0, int count = -1);
Poly complete_homogeneous(int nvars, int k);

// Newton divided difference f[x_1, ..., x_n] at distinct rational points.
Rational divided_difference_table(const UPolyQ& f, const std::vector<Rational>& points);
// sum_j f(x_j) / A'(x_j), A(z) = prod (z - x_j)
Rational divided_difference_lagrange(const UPolyQ& f, const std::vector<Rational>& points);

}  // namespace shtvol
