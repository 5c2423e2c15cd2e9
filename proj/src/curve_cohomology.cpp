// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include "shtvol/curve_cohomology.hpp"

#include <set>

#include "shtvol/linalg.hpp"

namespace shtvol {

std::optional<std::pair<Rational, int>> CurveCohomology::multiply(int a, int b) const {
  if (a == 0) return std::make_pair(Rational(1), b);
  if (b == 0) return std::make_pair(Rational(1), a);
  if (a == xi() || b == xi()) return std::nullopt;
  Rational c = pairing(a - 1, b - 1);
  if (c == 0) return std::nullopt;
  return std::make_pair(c, xi());
}

MatrixQ CurveCohomology::frobenius() const {
  MatrixQ m = MatrixQ::Zero(size(), size());
  m(0, 0) = 1;
  if (g > 0) m.block(1, 1, 2 * g, 2 * g) = frobenius_h1;
  m(xi(), xi()) = q;
  return m;
}

MatrixQ CurveCohomology::twisted_inverse(int d) const {
  MatrixQ m = MatrixQ::Zero(size(), size());
  m(0, 0) = power(q, d);
  if (g > 0) m.block(1, 1, 2 * g, 2 * g) = power(q, d) * inverse(frobenius_h1);
  m(xi(), xi()) = power(q, d - 1);
  return m;
}

CurveCohomology curve_cohomology(const CurveData& curve) {
  validate_curve(curve);
  CurveCohomology h;
  h.q = curve.q;
  h.g = curve.g;
  if (curve.g > 0) {
    if (!curve.frobenius || !curve.pairing) {
      throw PreconditionError("curve cohomology needs the H^1 Frobenius matrix and pairing");
    }
    h.frobenius_h1 = *curve.frobenius;
    h.pairing = *curve.pairing;
  } else {
    h.frobenius_h1 = MatrixQ(0, 0);
    h.pairing = MatrixQ(0, 0);
  }
  return h;
}

CurveCohomology even_cohomology(const Rational& q) {
  CurveCohomology h;
  h.q = q;
  h.g = 0;
  h.frobenius_h1 = MatrixQ(0, 0);
  h.pairing = MatrixQ(0, 0);
  return h;
}

void KunnethClass::add(const std::vector<int>& key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

int kunneth_degree(const CurveCohomology& h, const std::vector<int>& key) {
  int d = 0;
  for (int b : key) d += h.degree(b);
  return d;
}

int koszul_sign(const CurveCohomology& h, const std::vector<int>& a, const std::vector<int>& b) {
  // Moving b_j past a_{j+1}, ..., a_k.
  int parity = 0;
  int tail = 0;
  for (std::size_t j = a.size(); j-- > 0;) {
    parity += (h.degree(b[j]) % 2) * tail;
    tail += h.degree(a[j]) % 2;
  }
  return parity % 2 == 0 ? 1 : -1;
}

KunnethClass kunneth_product(const CurveCohomology& h, const KunnethClass& a, const KunnethClass& b) {
  if (a.factors != b.factors) throw PreconditionError("Kunneth product of classes on different powers");
  KunnethClass out{a.factors, {}};
  std::vector<int> key(static_cast<std::size_t>(a.factors));
  for (const auto& [ka, ca] : a.terms) {
    for (const auto& [kb, cb] : b.terms) {
      Rational c = ca * cb * koszul_sign(h, ka, kb);
      bool zero = false;
      for (std::size_t j = 0; j < ka.size() && !zero; ++j) {
        auto p = h.multiply(ka[j], kb[j]);
        if (!p) {
          zero = true;
        } else {
          c *= p->first;
          key[j] = p->second;
        }
      }
      if (!zero) out.add(key, c);
    }
  }
  return out;
}

KunnethClass kunneth_sum(const KunnethClass& a, const KunnethClass& b, const Rational& scale) {
  if (a.factors != b.factors) throw PreconditionError("Kunneth sum of classes on different powers");
  KunnethClass out = a;
  for (const auto& [k, c] : b.terms) out.add(k, scale * c);
  return out;
}

Rational kunneth_integral(const CurveCohomology& h, const KunnethClass& a) {
  std::vector<int> top(static_cast<std::size_t>(a.factors), h.xi());
  auto it = a.terms.find(top);
  return it == a.terms.end() ? Rational(0) : it->second;
}

KunnethClass apply_on_factor(const CurveCohomology& h, const KunnethClass& a, int factor, const MatrixQ& op) {
  KunnethClass out{a.factors, {}};
  for (const auto& [k, c] : a.terms) {
    std::vector<int> key = k;
    int b = k[static_cast<std::size_t>(factor)];
    for (int r = 0; r < h.size(); ++r) {
      if (op(r, b) == 0) continue;
      if (h.degree(r) != h.degree(b)) throw PreconditionError("factor operator does not preserve degree");
      key[static_cast<std::size_t>(factor)] = r;
      out.add(key, c * op(r, b));
    }
  }
  return out;
}

KunnethClass place(const KunnethClass& a, int total_factors, const std::vector<int>& positions) {
  if (static_cast<int>(positions.size()) != a.factors) throw PreconditionError("placement size mismatch");
  KunnethClass out{total_factors, {}};
  for (const auto& [k, c] : a.terms) {
    std::vector<int> key(static_cast<std::size_t>(total_factors), 0);
    for (std::size_t j = 0; j < positions.size(); ++j) key[static_cast<std::size_t>(positions[j])] = k[j];
    out.add(key, c);
  }
  return out;
}

KunnethClass diagonal_restriction(const CurveCohomology& h, const KunnethClass& a) {
  if (a.factors != 2) throw PreconditionError("diagonal restriction needs a class on X x X");
  KunnethClass out{1, {}};
  for (const auto& [k, c] : a.terms) {
    auto p = h.multiply(k[0], k[1]);
    if (p) out.add({p->second}, c * p->first);
  }
  return out;
}

KunnethClass diagonal_class(const CurveCohomology& h) {
  KunnethClass out{2, {}};
  out.add({0, h.xi()}, Rational(1));
  out.add({h.xi(), 0}, Rational(1));
  if (h.g > 0) {
    MatrixQ c = -inverse(MatrixQ(h.pairing.transpose()));
    for (int a = 0; a < 2 * h.g; ++a) {
      for (int b = 0; b < 2 * h.g; ++b) out.add({a + 1, b + 1}, c(a, b));
    }
  }
  return out;
}

namespace {

MatrixQ identity(int n) { return MatrixQ::Identity(n, n); }

void require_xi_index(int d) {
  if (d == 0 || d == 1) throw PreconditionError("Xi_d is undefined for d in {0, 1}");
}

}  // namespace

KunnethClass xi_class(const CurveCohomology& h, int d) {
  require_xi_index(d);
  MatrixQ op = inverse(MatrixQ(h.twisted_inverse(d) - identity(h.size())));
  return apply_on_factor(h, diagonal_class(h), 0, op);
}

KunnethClass xi_class_right(const CurveCohomology& h, int d) {
  require_xi_index(d);
  MatrixQ op = inverse(MatrixQ(power(h.q, d - 1) * h.frobenius() - identity(h.size())));
  return apply_on_factor(h, diagonal_class(h), 1, op);
}

KunnethClass xi_class_components(const CurveCohomology& h, int d) {
  require_xi_index(d);
  KunnethClass out{2, {}};
  out.add({0, h.xi()}, 1 / (power(h.q, d) - 1));
  out.add({h.xi(), 0}, 1 / (power(h.q, d - 1) - 1));
  if (h.g == 0) return out;
  const int n = 2 * h.g;
  std::vector<Rational> roots = rational_roots(characteristic_polynomial(h.frobenius_h1));
  if (static_cast<int>(roots.size()) != n) {
    throw PreconditionError("Frobenius on H^1 has irrational eigenvalues");
  }
  MatrixQ v(n, n);
  int filled = 0;
  std::set<Rational> seen;
  for (const auto& a : roots) {
    if (!seen.insert(a).second) continue;
    MatrixQ ker = nullspace(MatrixQ(h.frobenius_h1 - a * identity(n)));
    for (Eigen::Index k = 0; k < ker.cols(); ++k) v.col(filled++) = ker.col(k);
  }
  if (filled != n) throw PreconditionError("Frobenius on H^1 is not diagonalizable over Q");
  std::vector<Rational> alpha(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    VectorQ image = h.frobenius_h1 * v.col(j);
    for (int k = 0; k < n; ++k) {
      if (v(k, j) != 0) {
        alpha[static_cast<std::size_t>(j)] = image(k) / v(k, j);
        break;
      }
    }
  }
  // Dual basis: int zeta_i zeta^j = delta_ij.
  MatrixQ w = inverse(MatrixQ(v.transpose() * h.pairing));
  for (int j = 0; j < n; ++j) {
    Rational dual_alpha = h.q / alpha[static_cast<std::size_t>(j)];
    Rational weight = 1 / (1 - dual_alpha * power(h.q, d - 1));
    for (int a = 0; a < n; ++a) {
      if (v(a, j) == 0) continue;
      for (int b = 0; b < n; ++b) {
        if (w(b, j) != 0) out.add({a + 1, b + 1}, weight * v(a, j) * w(b, j));
      }
    }
  }
  return out;
}

KunnethClass xi_star1(const CurveCohomology& h) {
  KunnethClass delta = diagonal_class(h);
  delta.add({h.xi(), 0}, Rational(-1));
  MatrixQ op = MatrixQ::Zero(h.size(), h.size());
  if (h.g > 0) op.block(1, 1, 2 * h.g, 2 * h.g) = inverse(MatrixQ(h.frobenius_h1 - identity(2 * h.g)));
  op(h.xi(), h.xi()) = 1 / (h.q - 1);
  return apply_on_factor(h, delta, 1, op);
}

KunnethClass xi_star0(const CurveCohomology& h) {
  KunnethClass delta = diagonal_class(h);
  delta.add({0, h.xi()}, Rational(-1));
  MatrixQ op = MatrixQ::Zero(h.size(), h.size());
  op(0, 0) = 1 / (1 / h.q - 1);
  if (h.g > 0) {
    op.block(1, 1, 2 * h.g, 2 * h.g) = inverse(MatrixQ(h.frobenius_h1 / h.q - identity(2 * h.g)));
  }
  return apply_on_factor(h, delta, 1, op);
}

KunnethClass tangent_chern(const CurveCohomology& h) {
  KunnethClass out{1, {}};
  out.add({h.xi()}, Rational(2 - 2 * h.g));
  return out;
}

std::vector<XiProductCheck> xi_product_identity(const CurveCohomology& h, int d, int e) {
  auto xi3 = [&](int k, int a, int b) { return place(xi_class(h, k), 3, {a, b}); };
  auto mul = [&](const KunnethClass& a, const KunnethClass& b) { return kunneth_product(h, a, b); };
  std::vector<XiProductCheck> out;
  {
    // Legs 1 < i < i' on factors 0, 1, 2.
    KunnethClass lhs = mul(xi3(d, 0, 1), xi3(e, 0, 2));
    KunnethClass rhs = kunneth_sum(mul(xi3(d + e, 0, 1), xi3(e, 1, 2)), mul(xi3(d + e, 0, 2), xi3(1 - d, 1, 2)),
                                   Rational(-1));
    out.push_back({d, e, "i<i'", lhs == rhs});
  }
  {
    // Legs 1 < i' < i: i' on factor 1, i on factor 2.
    KunnethClass lhs = mul(xi3(d, 0, 2), xi3(e, 0, 1));
    KunnethClass rhs = kunneth_sum(mul(xi3(d + e, 0, 1), xi3(d, 1, 2)), mul(xi3(d + e, 0, 2), xi3(1 - e, 1, 2)),
                                   Rational(-1));
    out.push_back({d, e, "i>i'", lhs == rhs});
  }
  {
    KunnethClass lhs = kunneth_product(h, xi_class(h, d), xi_class(h, e));
    KunnethClass diag = kunneth_sum(diagonal_restriction(h, xi_class(h, e)), diagonal_restriction(h, xi_class(h, d)));
    diag = kunneth_sum(diag, tangent_chern(h));
    KunnethClass rhs = kunneth_product(h, xi_class(h, d + e), place(diag, 2, {1}));
    out.push_back({d, e, "i=i'", lhs == rhs});
  }
  return out;
}

}  // namespace shtvol
