// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#pragma once

#include <vector>

#include "shtvol/volume.hpp"

namespace shtvol {

// Scalar part c_j and the matrix of the induced operator on the motive
// (column k is the image of line k).
struct TraceLeg {
  Rational c;
  MatrixQ nabla;
};

std::vector<TraceLeg> trace_legs(const RootDatum& rd, const std::vector<LegSpec>& legs);

// slot 0 is H_0, slots 1..2g are H_1 coordinates, slot 2g+1 is H_2.
struct Generator {
  int line;
  int slot;
  int degree;  // cohomological
  bool odd;
};

using Exponents = std::vector<int>;

struct MonomialBasis {
  std::vector<Generator> generators;
  std::vector<std::vector<Exponents>> by_degree;  // index = cohomological degree
  int dmax;
};

MonomialBasis build_monomial_basis(const CurveData& curve, const GrossMotive& motive, int dmax);

struct DegreeOperators {
  int degree;
  MatrixQ frobenius_inverse;
  std::vector<MatrixQ> gamma;  // one per leg
};

// Dense matrices on each degree-i span, i <= dmax.
std::vector<DegreeOperators> build_operator(const CurveData& curve, const GrossMotive& motive,
                                            const std::vector<TraceLeg>& legs, int dmax);

struct TraceRun {
  int dmax = 0;
  int burn_in = 0;
  Rational q_power;
  std::vector<Rational> terms;         // (-1)^i Tr(Frob^{-1} Gamma_r ... Gamma_1 | degree i), times q_power
  std::vector<Rational> partial_sums;  // cumulative
  Rational value;                      // partial sum at dmax
  double decay_ratio = 1.0;            // per-degree geometric decay estimate
  double tail_bound = 0.0;
  bool diagonal_path = false;
};

struct TraceOptions {
  bool force_generic = false;
};

TraceRun truncated_trace(const CurveData& curve, const GrossMotive& motive, const std::vector<TraceLeg>& legs,
                         int dmax, long dim_bun, TraceOptions options = {});
// Same truncated sum for diagonal operators as a product of per-line series.
Rational factorized_trace(const CurveData& curve, const GrossMotive& motive, const std::vector<TraceLeg>& legs,
                          int dmax, long dim_bun);
// sum_i (-1)^i Tr(cGamma o Frob | H_c^{2 dim - i}) with H_c dual to H^i.
Rational compact_support_trace(const CurveData& curve, const GrossMotive& motive, const std::vector<TraceLeg>& legs,
                               int dmax, long dim_bun);

bool agrees(const TraceRun& run, const Rational& closed);

}  // namespace shtvol
