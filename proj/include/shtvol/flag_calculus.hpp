// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shtvol/weyl_poly.hpp"

namespace shtvol {

// Lines of R^W_+/(R^W_+)^2, one per fundamental invariant, sorted by degree.
struct GrossMotive {
  std::vector<std::string> names;
  std::vector<int> degrees;         // d_i, half the cohomological degree
  std::vector<int> invariant_index;  // position in rd.fundamental_invariants
  int size() const { return static_cast<int>(degrees.size()); }
};

struct EigenBlock {
  int degree;
  std::vector<int> lines;  // indices into the motive
  MatrixQ matrix;
  std::vector<Rational> characteristic_polynomial;
  std::vector<Rational> eigenvalues;  // with multiplicity; empty when not all rational
  bool diagonal;
};

struct EigenweightReport {
  GrossMotive motive;
  MatrixQ matrix;  // column j is the image of line j, in motive order
  std::vector<EigenBlock> blocks;
  std::vector<Rational> eigenvalues;  // per line when every block is diagonal
  std::vector<std::string> labels;
  bool rational_spectrum;
};

struct DegreeConstants {
  Rational d_omega;
  Rational d_prime;
};

GrossMotive gross_motive(const RootDatum& rd);
int flag_dimension(const RootDatum& rd, const Coweight& mu);
Poly attracting_chern(const RootDatum& rd, const Coweight& mu);
Poly integrate_flag(const RootDatum& rd, const Coweight& mu, const Poly& f);
// Same pushforward by evaluating the coset sum at random points and fitting an
// invariant polynomial; homogeneous f over the root-datum coordinates only.
Poly integrate_flag_interpolated(const RootDatum& rd, const Coweight& mu, const Poly& f, std::uint64_t seed);
Poly nabla(const RootDatum& rd, const Coweight& mu, const Poly& eta, const Poly& f);
Poly casimir_direction(const RootDatum& rd, const Coweight& mu);
EigenweightReport eigenweight_report(const RootDatum& rd, const Coweight& mu, const Poly& eta);
DegreeConstants degree_constants(const RootDatum& rd, const Coweight& mu, const Poly& eta, const Poly& eta_prime,
                                 const Rational& omega);

// Joint eigenvalues of pairwise commuting matrices. Entry [k][j] is the
// eigenvalue of matrices[j] on the k-th vector of a common eigenbasis.
std::vector<std::vector<Rational>> joint_spectrum(const std::vector<MatrixQ>& matrices);

}  // namespace shtvol
