// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#pragma once

#include <string>
#include <vector>

#include "shtvol/characters.hpp"
#include "shtvol/flag_calculus.hpp"
#include "shtvol/lfunctions.hpp"

namespace shtvol {

struct LegSpec {
  Coweight mu;
  Poly eta;
  Poly eta_prime;
  Rational omega;  // component label; only read for GL_n
};

struct VolumeResult {
  std::string theorem;
  Rational value;
  Rational per_component;
  long dim_bun = 0;
  Rational q_power;        // q^{dim Bun_G}
  Rational operator_value;  // differential operators applied to L*
  int pi1_factor = 1;
  std::vector<Rational> constants;               // c_j = d^omega(eta_j) + d(eta'_j)
  std::vector<std::vector<Rational>> eigenvalues;  // per leg, per motive line
  std::vector<int> line_degrees;
};

void check_admissible(const RootDatum& rd, const std::vector<LegSpec>& legs);
VolumeResult volume_split(const RootDatum& rd, const std::vector<LegSpec>& legs, const CurveData& curve, bool total);

// signs: +1 for the (1,0,..,0) leg, -1 for the (0,..,0,-1) leg.
std::vector<LegSpec> gln_legs(int n, int d, const std::vector<int>& signs, const std::vector<int>& degrees);
// b_0..b_r of prod_j (d - |mu_r| - ... - |mu_j| - |mu_j| D_j + |mu_j| N)
std::vector<Rational> gln_b_coefficients(int d, const std::vector<int>& signs, const std::vector<int>& degrees);
VolumeResult volume_gln(int n, int d, const std::vector<int>& signs, const std::vector<int>& degrees,
                        const CurveData& curve);

// X'/X double cover through its quadratic L-series L(s, chi).
struct DoubleCover {
  CurveData base;
  LSeries l_chi;
  std::string model;
};
// Constant field extension: L(t, chi) = Z_X(-t).
DoubleCover constant_field_cover(const CurveData& base);
// Geometrically connected unramified cover with the given L(t, chi), degree 2g - 2.
DoubleCover geometric_cover(const CurveData& base, const UPolyQ& l_chi_numerator);

struct UnitaryResult {
  VolumeResult result;
  Rational series_per_component;  // same quantity through r! [sigma^r] F(e^sigma)
};
UnitaryResult volume_unitary(int n, int r, int degree, const DoubleCover& cover);

struct ColmezInput {
  int n;
  std::vector<int> signs;  // +1 for mu_+, -1 for mu_-
  std::vector<int> sigma;  // group element per leg
  const FiniteGroup* group;
  const ArtinLSystem* artin;
};

struct ColmezResult {
  VolumeResult proposition;  // multinomial sums over c_{i,i'}(j)
  VolumeResult theorem;      // zeta, Artin and correction terms
  Rational reversed_bracket_sum;  // opposite overall sign, no factor r on the zeta term
  Rational proposition_sum;
  Rational theorem_sum;
  int gX;
};

// c_{i,i'}(d) through the Artin L-functions.
Rational colmez_constant(const ColmezInput& in, int i, int ip, int d);
Rational colmez_multinomial_diagonal(int n, int r);
Rational colmez_multinomial_offdiagonal(int n, int r, int j);
ColmezResult volume_colmez(const ColmezInput& in);

}  // namespace shtvol
