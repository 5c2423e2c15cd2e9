// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include "shtvol/volume.hpp"

#include <numeric>

namespace shtvol {

namespace {

Rational q_to_dim(const Rational& q, long dim) { return power(q, dim); }

UPolyQ linear_factor(const Rational& a0, const Rational& a1) { return UPolyQ{std::vector<Rational>{a0, a1}}; }

}  // namespace

void check_admissible(const RootDatum& rd, const std::vector<LegSpec>& legs) {
  Coweight total = Coweight::Zero(rd.coordinates);
  for (const auto& leg : legs) {
    if (leg.mu.size() != rd.coordinates) throw SchemaError("coweight has the wrong number of coordinates");
    if (!in_coweight_lattice(rd, leg.mu)) throw PreconditionError("coweight is not in the coweight lattice");
    if (!is_minuscule(rd, leg.mu)) throw PreconditionError("coweight is not minuscule");
    if (!is_dominant(rd, leg.mu)) throw PreconditionError("coweight is not dominant");
    total += leg.mu;
  }
  if (!in_coroot_lattice(rd, total)) throw PreconditionError("sum of coweights is not in the coroot lattice");
}

VolumeResult volume_split(const RootDatum& rd, const std::vector<LegSpec>& legs, const CurveData& curve, bool total) {
  check_admissible(rd, legs);
  validate_curve(curve);
  VolumeResult out;
  out.theorem = "th:vol gen";
  GrossMotive motive = gross_motive(rd);
  out.line_degrees = motive.degrees;
  const int n = motive.size();

  std::vector<EigenweightReport> reports;
  for (const auto& leg : legs) {
    reports.push_back(eigenweight_report(rd, leg.mu, leg.eta));
    DegreeConstants dc = degree_constants(rd, leg.mu, leg.eta, leg.eta_prime, leg.omega);
    out.constants.push_back(dc.d_omega + dc.d_prime);
  }
  out.eigenvalues.assign(legs.size(), std::vector<Rational>(static_cast<std::size_t>(n)));
  if (!legs.empty()) {
    for (const auto& block : reports.front().blocks) {
      std::vector<MatrixQ> mats;
      const auto size = static_cast<Eigen::Index>(block.lines.size());
      for (const auto& rep : reports) {
        MatrixQ m(size, size);
        for (Eigen::Index a = 0; a < size; ++a) {
          for (Eigen::Index b = 0; b < size; ++b) m(a, b) = rep.matrix(block.lines[a], block.lines[b]);
        }
        mats.push_back(m);
      }
      auto spectrum = joint_spectrum(mats);
      for (std::size_t k = 0; k < block.lines.size(); ++k) {
        for (std::size_t j = 0; j < legs.size(); ++j) {
          out.eigenvalues[j][static_cast<std::size_t>(block.lines[k])] = spectrum[k][j];
        }
      }
    }
  }
  std::vector<LegOperator> ops;
  for (std::size_t j = 0; j < legs.size(); ++j) ops.push_back({out.constants[j], out.eigenvalues[j]});
  out.operator_value = apply_leg_operators(curve, motive, ops);
  out.dim_bun = static_cast<long>(curve.g - 1) * rd.dim_g;
  out.q_power = q_to_dim(curve.q, out.dim_bun);
  out.per_component = out.q_power * out.operator_value;
  out.pi1_factor = total ? rd.pi1_order : 1;
  out.value = out.per_component * out.pi1_factor;
  return out;
}

std::vector<LegSpec> gln_legs(int n, int d, const std::vector<int>& signs, const std::vector<int>& degrees) {
  if (signs.size() != degrees.size()) throw SchemaError("signs and degrees differ in length");
  const int r = static_cast<int>(signs.size());
  std::vector<LegSpec> legs;
  for (int j = 0; j < r; ++j) {
    int tail = 0;
    for (int k = j; k < r; ++k) tail += signs[static_cast<std::size_t>(k)];
    const int D = degrees[static_cast<std::size_t>(j)];
    LegSpec leg;
    leg.mu = Coweight::Zero(n);
    Poly t;
    if (signs[static_cast<std::size_t>(j)] == 1) {
      leg.mu(0) = 1;
      t = Poly::variable(n, 0);
    } else if (signs[static_cast<std::size_t>(j)] == -1) {
      leg.mu(n - 1) = -1;
      t = -Poly::variable(n, n - 1);
    } else {
      throw SchemaError("GL_n signs must be +1 or -1");
    }
    leg.eta = t.pow(n);
    leg.eta_prime = Poly::constant(n, Rational(-D)) * t.pow(n - 1);
    leg.omega = Rational(d - tail);
    legs.push_back(std::move(leg));
  }
  return legs;
}

std::vector<Rational> gln_b_coefficients(int d, const std::vector<int>& signs, const std::vector<int>& degrees) {
  const int r = static_cast<int>(signs.size());
  UPolyQ b{Rational(1)};
  for (int j = 0; j < r; ++j) {
    int tail = 0;
    for (int k = j; k < r; ++k) tail += signs[static_cast<std::size_t>(k)];
    const int s = signs[static_cast<std::size_t>(j)];
    b = b * linear_factor(Rational(d - tail - s * degrees[static_cast<std::size_t>(j)]), Rational(s));
  }
  std::vector<Rational> out(static_cast<std::size_t>(r + 1));
  for (int i = 0; i <= r; ++i) out[static_cast<std::size_t>(i)] = b[i];
  return out;
}

VolumeResult volume_gln(int n, int d, const std::vector<int>& signs, const std::vector<int>& degrees,
                        const CurveData& curve) {
  validate_curve(curve);
  if (signs.size() != degrees.size()) throw SchemaError("signs and degrees differ in length");
  const int r = static_cast<int>(signs.size());
  if (r % 2 != 0) throw PreconditionError("GL_n closed form needs an even number of legs");
  if (std::accumulate(signs.begin(), signs.end(), 0) != 0) {
    throw PreconditionError("GL_n closed form needs as many raising as lowering legs");
  }
  VolumeResult out;
  out.theorem = "th:main GLn";
  auto b = gln_b_coefficients(d, signs, degrees);
  LSeries z = zeta_curve(curve);
  RationalFunction lstar = RationalFunction::polynomial(UPolyQ{Rational(1)});
  for (int i = 1; i <= n; ++i) {
    lstar = lstar * z.shifted(i, i == 1);
    out.line_degrees.push_back(i);
  }
  Rational sum(0);
  for (int i = 0; i <= r; ++i) {
    if (b[static_cast<std::size_t>(i)] != 0) sum += b[static_cast<std::size_t>(i)] * lstar.theta(i)(Rational(1));
  }
  const int sign = (r / 2) % 2 == 0 ? 1 : -1;
  out.constants = b;
  out.operator_value = sum * sign;
  out.dim_bun = static_cast<long>(curve.g - 1) * n * n;
  out.q_power = q_to_dim(curve.q, out.dim_bun);
  out.per_component = out.q_power * out.operator_value;
  out.value = out.per_component;
  return out;
}

DoubleCover constant_field_cover(const CurveData& base) {
  validate_curve(base);
  DoubleCover c;
  c.base = base;
  c.model = "constant-field";
  std::vector<Rational> coeffs(static_cast<std::size_t>(2 * base.g + 1));
  for (int i = 0; i <= 2 * base.g; ++i) coeffs[static_cast<std::size_t>(i)] = (i % 2 == 0 ? 1 : -1) * base.h1[i];
  UPolyQ num(std::move(coeffs));
  UPolyQ den = linear_factor(1, 1) * linear_factor(1, base.q);
  c.l_chi = LSeries{base.q, num, den, 0, 0};
  return c;
}

DoubleCover geometric_cover(const CurveData& base, const UPolyQ& l_chi_numerator) {
  validate_curve(base);
  if (base.g < 1) throw PreconditionError("an unramified double cover needs genus at least 1");
  if (l_chi_numerator.degree() != 2 * base.g - 2 || l_chi_numerator[0] != 1) {
    throw PreconditionError("L(t, chi) must have degree 2g - 2 and constant term 1");
  }
  if (!functional_equation_sign(l_chi_numerator, base.q)) {
    throw PreconditionError("L(t, chi) violates the functional equation");
  }
  DoubleCover c;
  c.base = base;
  c.model = "geometric";
  c.l_chi = LSeries{base.q, l_chi_numerator, UPolyQ{Rational(1)}, 0, 0};
  return c;
}

UnitaryResult volume_unitary(int n, int r, int degree, const DoubleCover& cover) {
  if (n < 1) throw PreconditionError("rank must be positive");
  if (r < 0 || r % 2 != 0) throw PreconditionError("unitary volume needs an even number of legs");
  const CurveData& curve = cover.base;
  LSeries z = zeta_curve(curve);
  if (degree < 0) throw PreconditionError("degree must be non-negative");
  std::vector<Rational> coeffs(static_cast<std::size_t>(degree + 1));
  coeffs.back() = 1;
  UPolyQ monomial(std::move(coeffs));
  RationalFunction f = RationalFunction::polynomial(monomial);
  for (int i = 1; i <= n; ++i) {
    const LSeries& l = i % 2 == 0 ? z : cover.l_chi;
    RationalFunction li = l.rational_function().substitute(power(curve.q, -i), 2);
    if (li.base()(Rational(1)) == 0) throw PreconditionError("L-factor has a pole at s = 0");
    f = f * li;
  }
  UnitaryResult out;
  VolumeResult& v = out.result;
  v.theorem = "th: vol U";
  v.dim_bun = static_cast<long>(curve.g - 1) * n * n;
  v.q_power = q_to_dim(curve.q, v.dim_bun);
  v.operator_value = f.theta(r)(Rational(1));
  v.per_component = v.q_power * v.operator_value;
  v.pi1_factor = 2;
  v.value = v.per_component * 2;
  for (int i = 1; i <= n; ++i) v.line_degrees.push_back(i);
  auto series = f.exponential_series(r);
  out.series_per_component = v.q_power * series[static_cast<std::size_t>(r)] * factorial(r);
  return out;
}

}  // namespace shtvol
