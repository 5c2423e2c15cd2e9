// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include "shtvol/phantom_ring.hpp"

#include <functional>

#include "shtvol/linalg.hpp"

namespace shtvol {

namespace {

void add_poly(PhantomElement& out, const std::vector<int>& key, const Poly& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = out.try_emplace(key, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) out.erase(it);
  }
}

// All exponent vectors of the given total degree in nvars variables.
void compositions(int total, int parts, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& f) {
  if (static_cast<int>(cur.size()) + 1 == parts) {
    cur.push_back(total);
    f(cur);
    cur.pop_back();
    return;
  }
  for (int k = total; k >= 0; --k) {
    cur.push_back(k);
    compositions(total - k, parts, cur, f);
    cur.pop_back();
  }
}

void for_each_composition(int total, int parts, const std::function<void(const std::vector<int>&)>& f) {
  if (parts == 0) {
    if (total == 0) f({});
    return;
  }
  std::vector<int> cur;
  compositions(total, parts, cur, f);
}

Rational pairing_constant(const Coweight& mu, const Poly& f) {
  Poly d = partial_derivative(f, mu);
  if (d.degree() > 0) throw PreconditionError("pairing with a coweight needs a degree-2 invariant");
  return d.constant_term();
}

}  // namespace

PhantomAmbient::PhantomAmbient(RootDatum rd, std::vector<Coweight> mu, CurveCohomology h, bool shared_factor)
    : rd_(std::move(rd)), mu_(std::move(mu)), h_(std::move(h)), shared_(shared_factor) {
  if (mu_.empty()) throw PreconditionError("phantom ring needs at least one leg");
  m_ = rd_.reduces_e1() ? rd_.coordinates - 1 : rd_.coordinates;
  if (legs() * m_ > Monomial::kMaxVariables) {
    throw PreconditionError("phantom ring supports at most " + std::to_string(Monomial::kMaxVariables) +
                            " leg variables in total");
  }
  const auto group = weyl_group(rd_);
  for (const auto& mu_i : mu_) {
    if (!is_minuscule(rd_, mu_i)) throw PreconditionError("phantom ring legs must be minuscule");
    flag_dims_.push_back(flag_dimension(rd_, mu_i));
    std::vector<WeylElement> stab;
    for (const auto& w : group) {
      if (act(w, mu_i) == mu_i) stab.push_back(w);
    }
    stabilizers_.push_back(std::move(stab));
  }
}

PhantomElement PhantomAmbient::one() const {
  PhantomElement e;
  e[std::vector<int>(static_cast<std::size_t>(factors()), 0)] = Poly::constant(nvars(), Rational(1));
  return e;
}

PhantomElement PhantomAmbient::leg_poly(int leg, const Poly& f) const {
  if (f.nvars() != rd_.coordinates) throw PreconditionError("leg polynomial lives in the wrong ring");
  Poly nf = normal_form(rd_, f);
  std::vector<Poly> images;
  for (int k = 0; k < rd_.coordinates; ++k) {
    if (k < m_) {
      images.push_back(Poly::variable(nvars(), leg * m_ + k));
    } else {
      Poly last(nvars());
      for (int j = 0; j < m_; ++j) last -= Poly::variable(nvars(), leg * m_ + j);
      images.push_back(last);
    }
  }
  PhantomElement e;
  add_poly(e, std::vector<int>(static_cast<std::size_t>(factors()), 0), nf.compose(images));
  return e;
}

PhantomElement PhantomAmbient::cohomology_class(const KunnethClass& c, const std::vector<int>& positions) const {
  KunnethClass placed = place(c, factors(), positions);
  PhantomElement e;
  for (const auto& [k, v] : placed.terms) add_poly(e, k, Poly::constant(nvars(), v));
  return e;
}

PhantomElement PhantomAmbient::xi_at(int leg) const {
  KunnethClass x{1, {}};
  x.add({h_.xi()}, Rational(1));
  return cohomology_class(x, {factor_of(leg)});
}

PhantomElement PhantomAmbient::multiply(const PhantomElement& a, const PhantomElement& b) const {
  PhantomElement out;
  std::vector<int> key(static_cast<std::size_t>(factors()));
  for (const auto& [ka, pa] : a) {
    for (const auto& [kb, pb] : b) {
      Rational c(koszul_sign(h_, ka, kb));
      bool zero = false;
      for (std::size_t j = 0; j < ka.size() && !zero; ++j) {
        auto p = h_.multiply(ka[j], kb[j]);
        if (!p) {
          zero = true;
        } else {
          c *= p->first;
          key[j] = p->second;
        }
      }
      if (!zero) add_poly(out, key, (pa * pb) * c);
    }
  }
  return out;
}

PhantomElement PhantomAmbient::frobenius(const PhantomElement& a) const {
  const MatrixQ f = h_.frobenius();
  PhantomElement out;
  for (const auto& [k, p] : a) {
    KunnethClass single{factors(), {}};
    single.add(k, Rational(1));
    for (int j = 0; j < factors(); ++j) single = apply_on_factor(h_, single, j, f);
    Poly scaled(nvars());
    for (const auto& [m, c] : p.terms()) scaled.add_term(m, c * power(h_.q, m.degree()));
    for (const auto& [k2, c2] : single.terms) add_poly(out, k2, scaled * c2);
  }
  return out;
}

int PhantomAmbient::degree(const PhantomElement& a) const {
  int d = -1;
  for (const auto& [k, p] : a) {
    for (const auto& [m, c] : p.terms()) {
      int e = kunneth_degree(h_, k) + 2 * m.degree();
      if (d >= 0 && e != d) throw PreconditionError("element is not homogeneous");
      d = e;
    }
  }
  return d;
}

const std::vector<Poly>& PhantomAmbient::leg_invariants(int leg, int p) const {
  auto key = std::make_pair(leg, p);
  auto it = invariant_cache_.find(key);
  if (it != invariant_cache_.end()) return it->second;
  const auto& stab = stabilizers_.at(static_cast<std::size_t>(leg));
  std::vector<Poly> sums;
  std::map<Monomial, int> columns;
  for_each_composition(p, m_, [&](const std::vector<int>& exps) {
    std::vector<int> full(static_cast<std::size_t>(rd_.coordinates), 0);
    for (int k = 0; k < m_; ++k) full[static_cast<std::size_t>(k)] = exps[static_cast<std::size_t>(k)];
    Poly mono = Poly::monomial(rd_.coordinates, Monomial::from_exponents(full));
    Poly s(rd_.coordinates);
    for (const auto& w : stab) s += act(rd_, w, mono);
    s = normal_form(rd_, s);
    if (s.is_zero()) return;
    for (const auto& [m, c] : s.terms()) columns.try_emplace(m, static_cast<int>(columns.size()));
    sums.push_back(std::move(s));
  });
  std::vector<Poly> basis;
  if (!sums.empty()) {
    MatrixQ mat = MatrixQ::Zero(static_cast<Eigen::Index>(sums.size()), static_cast<Eigen::Index>(columns.size()));
    std::vector<Monomial> monos(columns.size());
    for (const auto& [m, j] : columns) monos[static_cast<std::size_t>(j)] = m;
    for (std::size_t i = 0; i < sums.size(); ++i) {
      for (const auto& [m, c] : sums[i].terms()) mat(static_cast<Eigen::Index>(i), columns.at(m)) = c;
    }
    auto ech = row_echelon(mat);
    for (Eigen::Index i = 0; i < ech.rank(); ++i) {
      Poly b(rd_.coordinates);
      for (std::size_t j = 0; j < monos.size(); ++j) b.add_term(monos[j], ech.reduced(i, static_cast<Eigen::Index>(j)));
      basis.push_back(std::move(b));
    }
  }
  return invariant_cache_.emplace(key, std::move(basis)).first->second;
}

std::vector<PhantomElement> PhantomAmbient::basis(int degree) const {
  std::vector<PhantomElement> out;
  if (degree < 0) return out;
  const int k = factors();
  const int size = h_.size();
  std::vector<int> key(static_cast<std::size_t>(k), 0);
  std::function<void(int)> walk = [&](int j) {
    if (j < k) {
      for (int b = 0; b < size; ++b) {
        key[static_cast<std::size_t>(j)] = b;
        walk(j + 1);
      }
      return;
    }
    int rest = degree - kunneth_degree(h_, key);
    if (rest < 0 || rest % 2 != 0) return;
    for_each_composition(rest / 2, legs(), [&](const std::vector<int>& parts) {
      std::vector<PhantomElement> per_leg;
      PhantomElement prod;
      prod[key] = Poly::constant(nvars(), Rational(1));
      std::vector<const std::vector<Poly>*> bases;
      for (int i = 0; i < legs(); ++i) bases.push_back(&leg_invariants(i, parts[static_cast<std::size_t>(i)]));
      std::function<void(int, const PhantomElement&)> build = [&](int i, const PhantomElement& acc) {
        if (i == legs()) {
          out.push_back(acc);
          return;
        }
        for (const auto& b : *bases[static_cast<std::size_t>(i)]) build(i + 1, multiply(acc, leg_poly(i, b)));
      };
      build(0, prod);
    });
  };
  walk(0);
  return out;
}

PhantomElement element_sum(const PhantomElement& a, const PhantomElement& b, const Rational& scale) {
  PhantomElement out = a;
  for (const auto& [k, p] : b) add_poly(out, k, p * scale);
  return out;
}

PhantomElement element_scale(const PhantomElement& a, const Rational& s) {
  PhantomElement out;
  for (const auto& [k, p] : a) add_poly(out, k, p * s);
  return out;
}

namespace {

using Coordinates = std::map<std::pair<std::vector<int>, Monomial>, int>;

void register_support(Coordinates& coords, const PhantomElement& e) {
  for (const auto& [k, p] : e) {
    for (const auto& [m, c] : p.terms()) coords.try_emplace({k, m}, static_cast<int>(coords.size()));
  }
}

VectorQ to_vector(const Coordinates& coords, const PhantomElement& e, bool* outside) {
  VectorQ v = VectorQ::Zero(static_cast<Eigen::Index>(coords.size()));
  for (const auto& [k, p] : e) {
    for (const auto& [m, c] : p.terms()) {
      auto it = coords.find({k, m});
      if (it == coords.end()) {
        if (outside) *outside = true;
        continue;
      }
      v(it->second) = c;
    }
  }
  return v;
}

}  // namespace

PhantomRing build_quotient(std::shared_ptr<const PhantomAmbient> ambient, std::vector<PhantomElement> generators,
                           int max_degree) {
  PhantomRing ring;
  ring.ambient = ambient;
  ring.generators = std::move(generators);
  const PhantomAmbient& amb = *ambient;
  std::vector<int> gen_degree;
  for (const auto& g : ring.generators) gen_degree.push_back(amb.degree(g));
  std::vector<std::vector<PhantomElement>> bases;
  for (int k = 0; k <= max_degree; ++k) bases.push_back(amb.basis(k));
  for (int k = 0; k <= max_degree; ++k) {
    GradedPiece piece;
    piece.degree = k;
    piece.ambient_basis = bases[static_cast<std::size_t>(k)];
    for (const auto& b : piece.ambient_basis) register_support(piece.coordinates, b);
    std::vector<PhantomElement> span;
    for (std::size_t g = 0; g < ring.generators.size(); ++g) {
      int rest = k - gen_degree[g];
      if (gen_degree[g] < 0 || rest < 0) continue;
      for (const auto& b : bases[static_cast<std::size_t>(rest)]) {
        PhantomElement e = amb.multiply(b, ring.generators[g]);
        if (!e.empty()) span.push_back(std::move(e));
      }
    }
    const auto rows = static_cast<Eigen::Index>(piece.coordinates.size());
    const auto ns = static_cast<Eigen::Index>(span.size());
    const auto na = static_cast<Eigen::Index>(piece.ambient_basis.size());
    MatrixQ all(rows, ns + na);
    for (Eigen::Index j = 0; j < ns; ++j) {
      bool outside = false;
      all.col(j) = to_vector(piece.coordinates, span[static_cast<std::size_t>(j)], &outside);
      if (outside) throw InconsistencyError("ideal element leaves the ambient ring");
    }
    for (Eigen::Index j = 0; j < na; ++j) {
      all.col(ns + j) = to_vector(piece.coordinates, piece.ambient_basis[static_cast<std::size_t>(j)], nullptr);
    }
    auto ech = row_echelon(all);
    std::vector<Eigen::Index> chosen;
    for (auto p : ech.pivots) {
      chosen.push_back(p);
      if (p < ns) {
        ++piece.ideal_rank;
      } else {
        piece.quotient_basis.push_back(static_cast<int>(p - ns));
      }
    }
    piece.columns = MatrixQ(rows, static_cast<Eigen::Index>(chosen.size()));
    for (std::size_t j = 0; j < chosen.size(); ++j) piece.columns.col(static_cast<Eigen::Index>(j)) = all.col(chosen[j]);
    if (!chosen.empty()) {
      MatrixQ gram = piece.columns.transpose() * piece.columns;
      piece.solver = inverse(gram) * piece.columns.transpose();
    } else {
      piece.solver = MatrixQ(0, rows);
    }
    ring.pieces.push_back(std::move(piece));
  }
  return ring;
}

std::vector<int> PhantomRing::hilbert() const {
  std::vector<int> h;
  for (const auto& p : pieces) h.push_back(static_cast<int>(p.quotient_basis.size()));
  return h;
}

int PhantomRing::dimension() const {
  int s = 0;
  for (int d : hilbert()) s += d;
  return s;
}

VectorQ PhantomRing::reduce(const PhantomElement& a) const {
  int k = ambient->degree(a);
  if (k < 0) return VectorQ();
  if (k > max_degree()) throw PreconditionError("element degree exceeds the computed range of the ring");
  const GradedPiece& p = pieces[static_cast<std::size_t>(k)];
  bool outside = false;
  VectorQ v = to_vector(p.coordinates, a, &outside);
  if (outside) throw PreconditionError("element does not lie in the ambient ring");
  VectorQ x = p.solver * v;
  if (p.columns * x != v) throw PreconditionError("element does not lie in the ambient ring");
  return x.tail(static_cast<Eigen::Index>(p.quotient_basis.size()));
}

bool PhantomRing::in_ideal(const PhantomElement& a) const {
  VectorQ v = reduce(a);
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (v(j) != 0) return false;
  }
  return true;
}

PhantomElement PhantomRing::basis_element(int degree, int j) const {
  const GradedPiece& p = pieces.at(static_cast<std::size_t>(degree));
  return p.ambient_basis.at(static_cast<std::size_t>(p.quotient_basis.at(static_cast<std::size_t>(j))));
}

Rational PhantomRing::integral(const PhantomElement& a) const {
  int k = ambient->degree(a);
  if (k != top_degree) return Rational(0);
  const GradedPiece& p = pieces.at(static_cast<std::size_t>(top_degree));
  if (p.quotient_basis.size() != 1) throw InconsistencyError("top degree of the phantom ring is not one-dimensional");
  VectorQ t = reduce(top_class);
  if (t(0) == 0) throw InconsistencyError("top class vanishes in the phantom ring");
  return reduce(a)(0) / t(0);
}

Rational PhantomRing::volume(const PhantomElement& a) const {
  if (!prefactor) throw PreconditionError("no volume normalization for this ring");
  return *prefactor * integral(a);
}

MatrixQ PhantomRing::pairing_matrix(int degree) const {
  const int other = top_degree - degree;
  const int rows = hilbert().at(static_cast<std::size_t>(degree));
  const int cols = hilbert().at(static_cast<std::size_t>(other));
  MatrixQ m(rows, cols);
  for (int a = 0; a < rows; ++a) {
    for (int b = 0; b < cols; ++b) {
      m(a, b) = integral(ambient->multiply(basis_element(degree, a), basis_element(other, b)));
    }
  }
  return m;
}

bool PhantomRing::perfect() const {
  for (int k = 0; k <= top_degree; ++k) {
    MatrixQ m = pairing_matrix(k);
    if (m.rows() != m.cols()) return false;
    if (m.rows() > 0 && determinant(m) == 0) return false;
  }
  return true;
}

MatrixQ PhantomRing::frobenius_matrix(int degree) const {
  const int n = hilbert().at(static_cast<std::size_t>(degree));
  MatrixQ m(n, n);
  for (int j = 0; j < n; ++j) {
    VectorQ v = reduce(ambient->frobenius(basis_element(degree, j)));
    if (v.size() == 0) v = VectorQ::Zero(n);
    m.col(j) = v;
  }
  return m;
}

namespace {

// [Xi]_{a,b} in leg order a <= b, with the diagonal restriction when the legs share a factor.
PhantomElement xi_between(const PhantomAmbient& amb, const KunnethClass& xi, int a, int b) {
  int fa = amb.factor_of(a), fb = amb.factor_of(b);
  if (fa == fb) return amb.cohomology_class(diagonal_restriction(amb.cohomology(), xi), {fa});
  return amb.cohomology_class(xi, {fa, fb});
}

PhantomElement delta_leg(const PhantomAmbient& amb, int leg, const Poly& f) {
  const Coweight& mu = amb.coweights()[static_cast<std::size_t>(leg)];
  Poly d1 = partial_derivative(f, mu);
  Poly d2 = partial_derivative(d1, mu);
  PhantomElement out = amb.leg_poly(leg, d1);
  PhantomElement corr = amb.multiply(amb.xi_at(leg), amb.leg_poly(leg, d2));
  return element_sum(out, corr, Rational(1 - amb.cohomology().g));
}

int half_degree(const Poly& f) {
  if (!f.is_homogeneous() || f.is_zero()) throw PreconditionError("relation needs a nonzero homogeneous invariant");
  return f.degree();
}

}  // namespace

PhantomElement relation_d(const PhantomAmbient& amb, int leg, const Poly& f) {
  if (amb.factors() != amb.legs()) throw PreconditionError("D_i relations live on the full ambient ring");
  const int d = half_degree(f);
  if (d < 2) throw PreconditionError("D_i(f) needs deg f > 2");
  const CurveCohomology& h = amb.cohomology();
  const KunnethClass xi_d = xi_class(h, d);
  const KunnethClass xi_1d = xi_class(h, 1 - d);
  PhantomElement out = amb.leg_poly(leg, f);
  for (int ip = 0; ip < amb.legs(); ++ip) {
    PhantomElement delta = delta_leg(amb, ip, f);
    if (ip >= leg) {
      out = element_sum(out, amb.multiply(xi_between(amb, xi_d, leg, ip), delta), Rational(-1));
    } else {
      out = element_sum(out, amb.multiply(xi_between(amb, xi_1d, ip, leg), delta));
    }
  }
  return out;
}

PhantomElement relation_d_star(const PhantomAmbient& amb, int leg, const Poly& f, const Coweight& omega) {
  if (amb.factors() != amb.legs()) throw PreconditionError("D*_i relations live on the full ambient ring");
  if (half_degree(f) != 1) throw PreconditionError("D*_i(f) needs deg f = 2");
  const CurveCohomology& h = amb.cohomology();
  const KunnethClass s1 = xi_star1(h);
  const KunnethClass s0 = xi_star0(h);
  PhantomElement out = amb.leg_poly(leg, f);
  Coweight shift = omega;
  for (int ip = 0; ip < amb.legs(); ++ip) {
    const Coweight& mu = amb.coweights()[static_cast<std::size_t>(ip)];
    Rational c = pairing_constant(mu, f);
    if (ip < leg) shift += mu;
    if (c == 0) continue;
    if (ip >= leg) {
      out = element_sum(out, xi_between(amb, s1, leg, ip), -c);
    } else {
      out = element_sum(out, xi_between(amb, s0, ip, leg), c);
    }
  }
  return element_sum(out, amb.xi_at(leg), -pairing_constant(shift, f));
}

std::vector<PhantomElement> relation_generators(const PhantomAmbient& amb, const std::optional<Coweight>& omega) {
  std::vector<PhantomElement> out;
  for (int i = 0; i < amb.legs(); ++i) {
    for (const auto& inv : amb.root_datum().fundamental_invariants) {
      if (inv.degree == 2) {
        if (!omega) throw PreconditionError("reductive phantom ring needs the component coweight omega");
        out.push_back(relation_d_star(amb, i, inv.poly, *omega));
      } else {
        out.push_back(relation_d(amb, i, inv.poly));
      }
    }
  }
  return out;
}

std::vector<int> flag_poincare(const RootDatum& rd, const Coweight& mu) {
  const int n = rd.coordinates;
  Coweight generic(n);
  for (int k = 0; k < n; ++k) generic(k) = Rational(n - k);
  std::vector<int> out;
  std::vector<Coweight> orbit;
  for (const auto& w : weyl_cosets(rd, mu)) orbit.push_back(act(w, mu));
  for (const auto& lambda : orbit) {
    int len = 0;
    for (const auto& alpha : rd.roots) {
      if (pairing(alpha, generic) > 0 && pairing(alpha, lambda) < 0) ++len;
    }
    if (static_cast<int>(out.size()) <= 2 * len) out.resize(static_cast<std::size_t>(2 * len + 1), 0);
    ++out[static_cast<std::size_t>(2 * len)];
  }
  return out;
}

namespace {

std::vector<int> poly_product(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<int> curve_poincare(const CurveCohomology& h) { return {1, 2 * h.g, 1}; }

}  // namespace

std::vector<int> expected_hilbert(const PhantomAmbient& amb) {
  std::vector<int> out{1};
  for (int j = 0; j < amb.factors(); ++j) out = poly_product(out, curve_poincare(amb.cohomology()));
  for (int i = 0; i < amb.legs(); ++i) {
    out = poly_product(out, flag_poincare(amb.root_datum(), amb.coweights()[static_cast<std::size_t>(i)]));
  }
  return out;
}

Poly point_class_lift(const PhantomAmbient& amb, int leg) {
  const RootDatum& rd = amb.root_datum();
  const Coweight& mu = amb.coweights()[static_cast<std::size_t>(leg)];
  for (const auto& b : amb.leg_invariants(leg, amb.flag_dim(leg))) {
    Rational v = integrate_flag(rd, mu, b).constant_term();
    if (v != 0) return b * (1 / v);
  }
  throw InconsistencyError("no invariant of top degree integrates to a nonzero value");
}

namespace {

PhantomElement top_class_of(const PhantomAmbient& amb) {
  PhantomElement t = amb.one();
  for (int i = 0; i < amb.legs(); ++i) t = amb.multiply(t, amb.leg_poly(i, point_class_lift(amb, i)));
  for (int j = 0; j < amb.factors(); ++j) {
    KunnethClass x{1, {}};
    x.add({amb.cohomology().xi()}, Rational(1));
    t = amb.multiply(t, amb.cohomology_class(x, {j}));
  }
  return t;
}

int top_degree_of(const PhantomAmbient& amb) {
  int top = 2 * amb.factors();
  for (int i = 0; i < amb.legs(); ++i) top += 2 * amb.flag_dim(i);
  return top;
}

}  // namespace

PhantomRing build_phantom(const RootDatum& rd, const std::vector<Coweight>& mu, const CurveData& curve,
                          const std::optional<Coweight>& omega) {
  std::vector<LegSpec> legs;
  for (const auto& m : mu) legs.push_back({m, Poly(rd.coordinates), Poly(rd.coordinates), Rational(0)});
  check_admissible(rd, legs);
  auto amb = std::make_shared<const PhantomAmbient>(rd, mu, curve_cohomology(curve), false);
  const int top = top_degree_of(*amb);
  PhantomRing ring = build_quotient(amb, relation_generators(*amb, omega), top + 2);
  ring.top_degree = top;
  ring.top_class = top_class_of(*amb);
  int expected = 0;
  for (int d : expected_hilbert(*amb)) expected += d;
  if (ring.dimension() != expected) {
    throw InconsistencyError("phantom ring has dimension " + std::to_string(ring.dimension()) + ", expected " +
                             std::to_string(expected));
  }
  if (rd.is_semisimple()) {
    Rational pre = power(curve.q, static_cast<long>((curve.g - 1) * rd.dim_g));
    RationalFunction zeta = zeta_curve(curve).rational_function();
    for (const auto& inv : rd.fundamental_invariants) pre *= zeta(power(curve.q, -inv.degree / 2));
    ring.prefactor = pre;
  }
  return ring;
}

PhantomReport phantom_report(const PhantomRing& ring) {
  const PhantomAmbient& amb = *ring.ambient;
  PhantomReport rep;
  rep.hilbert = ring.hilbert();
  rep.expected = expected_hilbert(amb);
  rep.dimension = ring.dimension();
  for (int d : rep.expected) rep.expected_dimension += d;
  std::vector<int> trimmed = rep.hilbert;
  while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
  std::vector<PhantomElement> gens = ring.generators;
  const CurveCohomology& h = amb.cohomology();
  for (int j = 0; j < amb.factors(); ++j) {
    for (int b = 1; b < h.size(); ++b) {
      KunnethClass c{1, {}};
      c.add({b}, Rational(1));
      gens.push_back(amb.cohomology_class(c, {j}));
    }
  }
  PhantomRing red = build_quotient(ring.ambient, gens, ring.top_degree);
  rep.reduction_hilbert = red.hilbert();
  while (!rep.reduction_hilbert.empty() && rep.reduction_hilbert.back() == 0) rep.reduction_hilbert.pop_back();
  rep.reduction_expected = {1};
  for (int i = 0; i < amb.legs(); ++i) {
    rep.reduction_expected =
        poly_product(rep.reduction_expected, flag_poincare(amb.root_datum(), amb.coweights()[static_cast<std::size_t>(i)]));
  }
  int red_dim = 0;
  for (int d : rep.reduction_hilbert) red_dim += d;
  int hx = 1;
  for (int j = 0; j < amb.factors(); ++j) hx *= h.size();
  rep.free = rep.reduction_hilbert == rep.reduction_expected && rep.dimension == hx * red_dim &&
             trimmed == rep.expected;
  rep.top_one_dimensional = rep.hilbert.at(static_cast<std::size_t>(ring.top_degree)) == 1;
  rep.vanishes_above_top = true;
  for (int k = ring.top_degree + 1; k <= ring.max_degree(); ++k) {
    if (rep.hilbert[static_cast<std::size_t>(k)] != 0) rep.vanishes_above_top = false;
  }
  rep.frobenius_eigen = true;
  for (const auto& g : ring.generators) {
    int d = amb.degree(g);
    if (d < 0) continue;
    if (amb.frobenius(g) != element_scale(g, power(h.q, d / 2))) rep.frobenius_eigen = false;
  }
  if (h.g == 0) {
    rep.frobenius_pure = true;
    for (int k = 0; k <= ring.top_degree; ++k) {
      MatrixQ f = ring.frobenius_matrix(k);
      MatrixQ expect = MatrixQ::Identity(f.rows(), f.cols()) * power(h.q, k / 2);
      if (k % 2 != 0 || f != expect) {
        if (f.rows() > 0) rep.frobenius_pure = false;
      }
    }
  }
  rep.perfect = rep.top_one_dimensional && ring.perfect();
  if (ring.prefactor && rep.top_one_dimensional) rep.volume_top = ring.volume(ring.top_class);
  return rep;
}

PhantomElement volume_integrand(const PhantomAmbient& amb, const std::vector<LegSpec>& legs) {
  if (static_cast<int>(legs.size()) != amb.legs()) throw PreconditionError("leg count mismatch");
  PhantomElement out = amb.one();
  for (int i = 0; i < amb.legs(); ++i) {
    const LegSpec& l = legs[static_cast<std::size_t>(i)];
    PhantomElement leg = element_sum(amb.leg_poly(i, l.eta), amb.multiply(amb.xi_at(i), amb.leg_poly(i, l.eta_prime)));
    out = amb.multiply(out, leg);
  }
  return out;
}

bool difg_holds(const PhantomAmbient& amb, int leg, const Poly& f, const Poly& g) {
  const Poly fg = f * g;
  PhantomElement target = relation_d(amb, leg, fg);
  const int k = amb.degree(target);
  std::vector<PhantomElement> span;
  for (const Poly* p : {&f, &g}) {
    for (int j = 0; j < amb.legs(); ++j) {
      PhantomElement gen = relation_d(amb, j, *p);
      for (const auto& b : amb.basis(k - amb.degree(gen))) span.push_back(amb.multiply(b, gen));
    }
  }
  Coordinates coords;
  for (const auto& s : span) register_support(coords, s);
  register_support(coords, target);
  MatrixQ a(static_cast<Eigen::Index>(coords.size()), static_cast<Eigen::Index>(span.size()));
  for (std::size_t j = 0; j < span.size(); ++j) a.col(static_cast<Eigen::Index>(j)) = to_vector(coords, span[j], nullptr);
  return solve(a, to_vector(coords, target, nullptr)).has_value();
}

std::vector<Coweight> colmez_coweights(int n, const std::vector<int>& signs) {
  std::vector<Coweight> out;
  for (int s : signs) {
    Coweight mu(n);
    for (int k = 0; k < n; ++k) mu(k) = Rational(s > 0 ? -1 : 1, n);
    if (s > 0) {
      mu(0) += 1;
    } else {
      mu(n - 1) -= 1;
    }
    for (int k = 0; k < n; ++k) mu(k).canonicalize();
    out.push_back(mu);
  }
  return out;
}

SigmaRing build_phantom_sigma(const ColmezInput& in) {
  if (in.group == nullptr || in.artin == nullptr) throw PreconditionError("Colmez ring needs group and Artin data");
  const RootDatum rd = build_root_datum(Family::PGL, in.n);
  const int r = static_cast<int>(in.signs.size());
  auto amb = std::make_shared<const PhantomAmbient>(rd, colmez_coweights(in.n, in.signs), even_cohomology(in.artin->q),
                                                    true);
  SigmaRing s;
  s.input = in;
  for (const auto& inv : rd.fundamental_invariants) {
    const int d = inv.degree / 2;
    std::vector<std::vector<Rational>> c(static_cast<std::size_t>(r), std::vector<Rational>(static_cast<std::size_t>(r)));
    for (int i = 0; i < r; ++i) {
      for (int ip = 0; ip < r; ++ip) c[static_cast<std::size_t>(i)][static_cast<std::size_t>(ip)] = colmez_constant(in, i, ip, d);
    }
    s.constants[d] = std::move(c);
  }
  std::vector<PhantomElement> gens;
  for (int i = 0; i < r; ++i) {
    for (const auto& inv : rd.fundamental_invariants) {
      const auto& c = s.constants.at(inv.degree / 2);
      PhantomElement corr;
      for (int ip = 0; ip < r; ++ip) {
        Rational k = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(ip)];
        if (k == 0) continue;
        Poly d = partial_derivative(inv.poly, amb->coweights()[static_cast<std::size_t>(ip)]);
        corr = element_sum(corr, amb->leg_poly(ip, d), k);
      }
      gens.push_back(element_sum(amb->leg_poly(i, inv.poly), amb->multiply(amb->xi_at(0), corr), Rational(-1)));
    }
  }
  const int top = top_degree_of(*amb);
  s.ring = build_quotient(amb, std::move(gens), top + 2);
  s.ring.top_degree = top;
  s.ring.top_class = top_class_of(*amb);
  for (int i = 0; i < r; ++i) {
    Poly t = in.signs[static_cast<std::size_t>(i)] > 0 ? -Poly::variable(rd.coordinates, 0)
                                                       : Poly::variable(rd.coordinates, rd.coordinates - 1);
    s.t.push_back(t);
  }
  return s;
}

PhantomElement colmez_monomial(const SigmaRing& s, const std::vector<int>& exponents) {
  const PhantomAmbient& amb = *s.ring.ambient;
  PhantomElement out = amb.one();
  for (int i = 0; i < amb.legs(); ++i) {
    out = amb.multiply(out, amb.leg_poly(i, s.t[static_cast<std::size_t>(i)].pow(exponents.at(static_cast<std::size_t>(i)))));
  }
  return out;
}

PhantomElement colmez_eta(const SigmaRing& s) {
  const PhantomAmbient& amb = *s.ring.ambient;
  PhantomElement sum;
  for (int i = 0; i < amb.legs(); ++i) sum = element_sum(sum, amb.leg_poly(i, s.t[static_cast<std::size_t>(i)]));
  PhantomElement out = amb.one();
  const int e = (s.input.n - 1) * amb.legs() + 1;
  for (int k = 0; k < e; ++k) out = amb.multiply(out, sum);
  return out;
}

}  // namespace shtvol
