// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include <vector>

#include "shtvol/volume.hpp"

namespace shtvol {

namespace {

void validate(const ColmezInput& in) {
  if (in.group == nullptr || in.artin == nullptr) throw SchemaError("group and Artin data are required");
  if (in.n < 2) throw PreconditionError("PGL_n needs n >= 2");
  if (in.signs.size() != in.sigma.size()) throw SchemaError("signs and sigma differ in length");
  if (in.signs.empty()) throw PreconditionError("at least one leg is required");
  for (int s : in.signs) {
    if (s != 1 && s != -1) throw SchemaError("signs must be +1 or -1");
  }
  for (int e : in.sigma) {
    if (e < 0 || e >= in.group->order()) throw SchemaError("sigma entry is not a group element");
  }
  const auto& irr = in.group->irreducibles;
  if (irr.size() != in.artin->reps.size()) throw InconsistencyError("Artin data and character table disagree");
  for (std::size_t k = 0; k < irr.size(); ++k) {
    if (irr[k].dim != in.artin->reps[k].dim) throw InconsistencyError("Artin data and character table disagree");
  }
}

// sum_rho chi_{rho^vee}(g) ell_rho(d)
Rational character_sum(const ColmezInput& in, int g, int d) {
  const FiniteGroup& G = *in.group;
  Rational s(0);
  for (std::size_t rho = 0; rho < G.irreducibles.size(); ++rho) {
    const Rational& chi = G.irreducibles[static_cast<std::size_t>(G.dual[rho])].character[static_cast<std::size_t>(g)];
    if (chi != 0) s += chi * in.artin->log_derivative(rho, d);
  }
  return s;
}

LSeries zeta_x(const ArtinLSystem& a) { return LSeries{a.q, a.product_numerator(), UPolyQ{Rational(1)}, 1, 1}; }

}  // namespace

Rational colmez_constant(const ColmezInput& in, int i, int ip, int d) {
  const FiniteGroup& G = *in.group;
  const int si = in.sigma.at(static_cast<std::size_t>(i));
  const int sip = in.sigma.at(static_cast<std::size_t>(ip));
  if (ip >= i) return character_sum(in, G.multiply(G.inverse[static_cast<std::size_t>(si)], sip), d);
  return -character_sum(in, G.multiply(G.inverse[static_cast<std::size_t>(sip)], si), 1 - d);
}

Rational colmez_multinomial_diagonal(int n, int r) {
  std::vector<long> parts{n};
  for (int k = 1; k < r; ++k) parts.push_back(n - 1);
  return multinomial(static_cast<long>(n - 1) * r + 1, parts);
}

Rational colmez_multinomial_offdiagonal(int n, int r, int j) {
  if (r < 2) return Rational(0);
  std::vector<long> parts{n + j - 1, n - j};
  for (int k = 2; k < r; ++k) parts.push_back(n - 1);
  return multinomial(static_cast<long>(n - 1) * r + 1, parts);
}

ColmezResult volume_colmez(const ColmezInput& in) {
  validate(in);
  const FiniteGroup& G = *in.group;
  const ArtinLSystem& artin = *in.artin;
  const int n = in.n;
  const int r = static_cast<int>(in.signs.size());
  const int order = G.order();
  ColmezResult out;
  out.gX = 1 + order * (artin.gY - 1);

  const Rational m1 = colmez_multinomial_diagonal(n, r);
  Rational prop(0);
  for (int j = 2; j <= n; ++j) {
    const Rational m2 = colmez_multinomial_offdiagonal(n, r, j);
    for (int i = 0; i < r; ++i) {
      prop -= colmez_constant(in, i, i, j) * m1;
      for (int ip = 0; ip < r; ++ip) {
        if (ip == i || m2 == 0) continue;
        const bool flip = in.signs[static_cast<std::size_t>(i)] != in.signs[static_cast<std::size_t>(ip)] && j % 2 == 1;
        Rational c = colmez_constant(in, i, ip, j) * m2;
        prop += flip ? c : -c;
      }
    }
  }

  const LSeries zx = zeta_x(artin);
  const Rational sq = Rational(order * order);
  Rational thm(0), reversed(0);
  for (int j = 2; j <= n; ++j) {
    const Rational m2 = colmez_multinomial_offdiagonal(n, r, j);
    const Rational zj = -log_derivative_at(zx, j);
    GroupFunction phi = phi_tuple(G, in.sigma, in.signs, j);
    GroupFunction conv = convolve(G, phi, dual(G, phi));
    const Rational lam = -artin.log_derivative(natural_coefficients(G, conv), j);
    const Rational corr = Rational(artin.gY - 1) * sq * m2 * (conv[static_cast<std::size_t>(G.identity)] - make_rational(r, order));
    thm += Rational(r) * (m1 - m2) * zj + sq * m2 * lam + corr;
    reversed += -(m1 - m2) * zj - sq * m2 * lam - corr;
  }

  Rational prefactor = power(artin.q, static_cast<long>(n * n - 1) * (out.gX - 1));
  for (int d = 2; d <= n; ++d) prefactor *= zx.rational_function()(power(artin.q, -d));
  auto fill = [&](VolumeResult& v, const std::string& tag, const Rational& sum) {
    v.theorem = tag;
    v.dim_bun = static_cast<long>(n * n - 1) * (out.gX - 1);
    v.q_power = power(artin.q, v.dim_bun);
    v.operator_value = prefactor / v.q_power * sum;
    v.per_component = prefactor * sum;
    v.value = v.per_component;
    for (int d = 2; d <= n; ++d) v.line_degrees.push_back(d);
  };
  fill(out.proposition, "prop: vol PGL", prop);
  fill(out.theorem, "th:vol 1-leg PGL", thm);
  out.proposition_sum = prop;
  out.theorem_sum = thm;
  out.reversed_bracket_sum = reversed;
  return out;
}

}  // namespace shtvol
