// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#pragma once

#include <string>
#include <vector>

#include "shtvol/rational.hpp"

namespace shtvol {

// Functions on a finite group, one coefficient per element.
using GroupFunction = std::vector<Rational>;

struct Irreducible {
  std::string name;
  int dim;
  GroupFunction character;  // value per element
};

struct FiniteGroup {
  std::string name;
  std::vector<std::string> element_names;
  std::vector<std::vector<int>> table;  // table[a][b] = index of a*b
  int identity;
  std::vector<int> inverse;
  std::vector<std::vector<int>> classes;
  std::vector<Irreducible> irreducibles;  // irreducibles[0] is trivial
  std::vector<int> dual;                   // index of rho^vee

  int order() const { return static_cast<int>(table.size()); }
  int multiply(int a, int b) const { return table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
};

// "trivial", "z2", "z2xz2", "s3", "s4".
FiniteGroup make_group(const std::string& name);
// Validates a multiplication table and characters given per element.
FiniteGroup make_group(const std::string& name, std::vector<std::vector<int>> table, std::vector<Irreducible> irreducibles);

GroupFunction delta(const FiniteGroup& g, int element);
// (phi * psi)(x) = |G|^{-1} sum_h phi(x h^{-1}) psi(h)
GroupFunction convolve(const FiniteGroup& g, const GroupFunction& phi, const GroupFunction& psi);
GroupFunction dual(const FiniteGroup& g, const GroupFunction& phi);
// <phi, psi> = |G|^{-1} sum_x phi(x) psi(x)
Rational pairing(const FiniteGroup& g, const GroupFunction& phi, const GroupFunction& psi);
// Coefficients a_rho = <phi, chi_{rho^vee}> of the class-function projection.
std::vector<Rational> natural_coefficients(const FiniteGroup& g, const GroupFunction& phi);
GroupFunction natural_projection(const FiniteGroup& g, const GroupFunction& phi);
// sum_i sign_i^j delta_{sigma_i}; signs are +1 or -1
GroupFunction phi_tuple(const FiniteGroup& g, const std::vector<int>& sigma, const std::vector<int>& signs, int j);

}  // namespace shtvol
