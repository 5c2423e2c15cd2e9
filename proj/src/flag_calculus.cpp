// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include "shtvol/flag_calculus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "shtvol/linalg.hpp"

namespace shtvol {

namespace {

std::vector<Root> negative_roots(const RootDatum& rd, const Coweight& mu) {
  std::vector<Root> out;
  for (const auto& a : rd.roots) {
    if (pairing(a, mu) < 0) out.push_back(a);
  }
  return out;
}

Root act_on_root(const WeylElement& w, const Root& a) {
  Root out = Root::Zero(a.size());
  for (std::size_t k = 0; k < w.perm.size(); ++k) out(w.perm[k]) = a(static_cast<Eigen::Index>(k)) * w.sign[k];
  return out;
}

// Flips the sign so the first nonzero entry is positive; returns the flip.
int normalize_root(Root& a) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (a(k) != 0) {
      if (a(k) < 0) {
        a = -a;
        return -1;
      }
      return 1;
    }
  }
  return 1;
}

std::vector<int> root_key(const Root& a) { return std::vector<int>(a.data(), a.data() + a.size()); }

void check_stabilizer_invariant(const RootDatum& rd, const Coweight& mu, const Poly& f) {
  if (!is_stabilizer_invariant(rd, mu, f)) {
    throw PreconditionError("integrand is not invariant under the stabilizer of the coweight");
  }
}

}  // namespace

GrossMotive gross_motive(const RootDatum& rd) {
  GrossMotive m;
  std::vector<int> order(rd.fundamental_invariants.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return rd.fundamental_invariants[static_cast<std::size_t>(a)].degree <
           rd.fundamental_invariants[static_cast<std::size_t>(b)].degree;
  });
  for (int i : order) {
    const auto& inv = rd.fundamental_invariants[static_cast<std::size_t>(i)];
    m.names.push_back(inv.name);
    m.degrees.push_back(inv.degree / 2);
    m.invariant_index.push_back(i);
  }
  return m;
}

int flag_dimension(const RootDatum& rd, const Coweight& mu) {
  return static_cast<int>(negative_roots(rd, mu).size());
}

Poly attracting_chern(const RootDatum& rd, const Coweight& mu) {
  Poly r = Poly::constant(rd.coordinates, 1);
  for (const auto& a : negative_roots(rd, mu)) r *= root_form(a, rd.coordinates);
  return r;
}

Poly integrate_flag(const RootDatum& rd, const Coweight& mu, const Poly& f) {
  if (f.nvars() < rd.coordinates) throw PreconditionError("integrand has too few variables");
  check_stabilizer_invariant(rd, mu, f);
  const int nv = f.nvars();
  const auto cosets = weyl_cosets(rd, mu);
  const auto neg = negative_roots(rd, mu);

  std::map<std::vector<int>, Root> denominator;
  std::vector<std::vector<std::vector<int>>> coset_roots;
  std::vector<int> coset_sign;
  for (const auto& w : cosets) {
    int sign = 1;
    std::vector<std::vector<int>> keys;
    for (const auto& a : neg) {
      Root b = act_on_root(w, a);
      sign *= normalize_root(b);
      keys.push_back(root_key(b));
      denominator.try_emplace(keys.back(), b);
    }
    std::sort(keys.begin(), keys.end());
    coset_roots.push_back(std::move(keys));
    coset_sign.push_back(sign);
  }

  Poly numerator(nv);
  for (std::size_t c = 0; c < cosets.size(); ++c) {
    Poly term = act(rd, cosets[c], f);
    if (coset_sign[c] < 0) term *= Rational(-1);
    for (const auto& [key, root] : denominator) {
      if (!std::binary_search(coset_roots[c].begin(), coset_roots[c].end(), key)) {
        term *= root_form(root, nv);
      }
    }
    numerator += term;
  }
  Poly quotient(nv);
  for (const auto& [key, root] : denominator) {
    if (!numerator.divide_exact(root_form(root, nv), quotient)) {
      throw InconsistencyError("pushforward: nonzero remainder in the common-denominator division");
    }
    numerator = std::move(quotient);
  }
  return numerator;
}

Poly integrate_flag_interpolated(const RootDatum& rd, const Coweight& mu, const Poly& f, std::uint64_t seed) {
  if (f.nvars() != rd.coordinates) throw PreconditionError("interpolation path needs coordinate variables only");
  if (!f.is_homogeneous()) throw PreconditionError("interpolation path needs a homogeneous integrand");
  check_stabilizer_invariant(rd, mu, f);
  const int n = rd.coordinates;
  const int target = f.degree() - flag_dimension(rd, mu);
  if (f.is_zero() || target < 0) return Poly(n);

  std::vector<Poly> gens;
  if (rd.reduces_e1()) {
    for (int k = 1; k <= n; ++k) gens.push_back(elementary_symmetric(n, k));
  } else {
    for (const auto& inv : rd.fundamental_invariants) gens.push_back(inv.poly);
  }
  std::vector<std::vector<int>> exps;
  std::vector<int> current(gens.size(), 0);
  auto recurse = [&](auto&& self, std::size_t idx, int rest) -> void {
    if (idx == gens.size()) {
      if (rest == 0) exps.push_back(current);
      return;
    }
    for (int a = 0; a * gens[idx].degree() <= rest; ++a) {
      current[idx] = a;
      self(self, idx + 1, rest - a * gens[idx].degree());
    }
    current[idx] = 0;
  };
  recurse(recurse, 0, target);
  std::vector<Poly> columns;
  for (const auto& a : exps) {
    Poly col = Poly::constant(n, 1);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (a[i] > 0) col *= gens[i].pow(a[i]);
    }
    columns.push_back(std::move(col));
  }

  const auto cosets = weyl_cosets(rd, mu);
  const Poly r = attracting_chern(rd, mu);
  std::vector<Poly> images_f, images_r;
  for (const auto& w : cosets) {
    images_f.push_back(act(rd, w, f));
    images_r.push_back(act(rd, w, r));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-40, 40);
  const auto unknowns = static_cast<Eigen::Index>(columns.size());
  const Eigen::Index samples = unknowns + 3;
  MatrixQ a(samples, unknowns);
  VectorQ b(samples);
  for (Eigen::Index s = 0; s < samples; ++s) {
    std::vector<Rational> point;
    bool ok = false;
    while (!ok) {
      point.clear();
      for (int k = 0; k < n; ++k) point.push_back(make_rational(dist(rng), 1 + (dist(rng) + 40) % 5));
      ok = true;
      for (const auto& alpha : rd.roots) {
        Rational v(0);
        for (int k = 0; k < n; ++k) v += Rational(alpha(k)) * point[static_cast<std::size_t>(k)];
        if (v == 0) ok = false;
      }
    }
    Rational value(0);
    for (std::size_t c = 0; c < cosets.size(); ++c) value += images_f[c].evaluate(point) / images_r[c].evaluate(point);
    b(s) = value;
    for (Eigen::Index j = 0; j < unknowns; ++j) a(s, j) = columns[static_cast<std::size_t>(j)].evaluate(point);
  }
  auto x = solve(a, b);
  if (!x) throw InconsistencyError("interpolated pushforward is not an invariant polynomial");
  Poly out(n);
  for (Eigen::Index j = 0; j < unknowns; ++j) out += columns[static_cast<std::size_t>(j)] * (*x)(j);
  return out;
}

Poly nabla(const RootDatum& rd, const Coweight& mu, const Poly& eta, const Poly& f) {
  const int D = flag_dimension(rd, mu);
  if (!eta.is_zero() && (!eta.is_homogeneous() || eta.degree() != D + 1)) {
    throw PreconditionError("eta must be homogeneous of cohomological degree 2(D_mu + 1)");
  }
  return integrate_flag(rd, mu, eta * partial_derivative(f, mu));
}

Poly casimir_direction(const RootDatum& rd, const Coweight& mu) {
  Poly t(rd.coordinates);
  for (int k = 0; k < rd.coordinates; ++k) t.add_term(Monomial::variable(k), mu(k));
  return t;
}

std::vector<std::vector<Rational>> joint_spectrum(const std::vector<MatrixQ>& matrices) {
  if (matrices.empty()) return {};
  const Eigen::Index n = matrices[0].rows();
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    for (std::size_t j = i + 1; j < matrices.size(); ++j) {
      MatrixQ c = matrices[i] * matrices[j] - matrices[j] * matrices[i];
      if (c != MatrixQ::Zero(n, n)) throw PreconditionError("eigenweight operators of different legs do not commute");
    }
  }
  struct Space {
    MatrixQ basis;
    std::vector<Rational> values;
  };
  std::vector<Space> spaces{{MatrixQ::Identity(n, n), {}}};
  for (const auto& a : matrices) {
    std::vector<Space> next;
    for (const auto& sp : spaces) {
      const Eigen::Index k = sp.basis.cols();
      MatrixQ image = a * sp.basis;
      MatrixQ restricted(k, k);
      for (Eigen::Index j = 0; j < k; ++j) {
        auto col = solve(sp.basis, image.col(j));
        if (!col) throw InconsistencyError("joint eigenspace is not invariant");
        restricted.col(j) = *col;
      }
      auto roots = rational_roots(characteristic_polynomial(restricted));
      if (static_cast<Eigen::Index>(roots.size()) != k) {
        throw PreconditionError("eigenweight operator has irrational eigenvalues");
      }
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
      Eigen::Index total = 0;
      for (const auto& lambda : roots) {
        MatrixQ shifted = restricted - lambda * MatrixQ::Identity(k, k);
        MatrixQ kernel = nullspace(shifted);
        total += kernel.cols();
        Space s{sp.basis * kernel, sp.values};
        s.values.push_back(lambda);
        next.push_back(std::move(s));
      }
      if (total != k) throw PreconditionError("eigenweight operator is not diagonalizable");
    }
    spaces = std::move(next);
  }
  std::vector<std::vector<Rational>> out;
  for (const auto& sp : spaces) {
    for (Eigen::Index j = 0; j < sp.basis.cols(); ++j) out.push_back(sp.values);
  }
  return out;
}

EigenweightReport eigenweight_report(const RootDatum& rd, const Coweight& mu, const Poly& eta) {
  EigenweightReport rep;
  rep.motive = gross_motive(rd);
  const int lines = rep.motive.size();
  rep.matrix = MatrixQ::Zero(lines, lines);
  std::vector<int> position(static_cast<std::size_t>(lines));
  for (int j = 0; j < lines; ++j) position[static_cast<std::size_t>(rep.motive.invariant_index[static_cast<std::size_t>(j)])] = j;
  for (int j = 0; j < lines; ++j) {
    const auto& inv = rd.fundamental_invariants[static_cast<std::size_t>(rep.motive.invariant_index[static_cast<std::size_t>(j)])];
    Poly image = nabla(rd, mu, eta, inv.poly);
    VectorQ lin = linear_part(rd, express_in_invariants(rd, image));
    for (int i = 0; i < lines; ++i) rep.matrix(position[static_cast<std::size_t>(i)], j) = lin(i);
  }
  rep.rational_spectrum = true;
  for (int start = 0; start < lines;) {
    int end = start;
    while (end < lines && rep.motive.degrees[static_cast<std::size_t>(end)] == rep.motive.degrees[static_cast<std::size_t>(start)]) ++end;
    EigenBlock blk;
    blk.degree = rep.motive.degrees[static_cast<std::size_t>(start)];
    for (int i = start; i < end; ++i) blk.lines.push_back(i);
    blk.matrix = rep.matrix.block(start, start, end - start, end - start);
    blk.characteristic_polynomial = characteristic_polynomial(blk.matrix);
    blk.diagonal = blk.matrix.isDiagonal(Rational(0));
    auto roots = rational_roots(blk.characteristic_polynomial);
    if (static_cast<int>(roots.size()) == end - start) {
      blk.eigenvalues = roots;
    } else {
      rep.rational_spectrum = false;
    }
    for (int i = start; i < end; ++i) {
      for (int k = 0; k < lines; ++k) {
        if ((k < start || k >= end) && rep.matrix(k, i) != 0) throw InconsistencyError("nabla does not preserve degree");
      }
    }
    rep.blocks.push_back(std::move(blk));
    start = end;
  }
  for (const auto& blk : rep.blocks) {
    if (blk.diagonal) {
      for (int i : blk.lines) {
        rep.eigenvalues.push_back(rep.matrix(i, i));
        rep.labels.push_back(rep.motive.names[static_cast<std::size_t>(i)]);
      }
    } else {
      for (std::size_t k = 0; k < blk.eigenvalues.size(); ++k) {
        rep.eigenvalues.push_back(blk.eigenvalues[k]);
        rep.labels.push_back("degree-" + std::to_string(2 * blk.degree) + " eigenvector " + std::to_string(k + 1));
      }
    }
  }
  return rep;
}

DegreeConstants degree_constants(const RootDatum& rd, const Coweight& mu, const Poly& eta, const Poly& eta_prime,
                                 const Rational& omega) {
  const int D = flag_dimension(rd, mu);
  if (!eta.is_zero() && (!eta.is_homogeneous() || eta.degree() != D + 1)) {
    throw PreconditionError("eta must have cohomological degree 2(D_mu + 1)");
  }
  if (!eta_prime.is_zero() && (!eta_prime.is_homogeneous() || eta_prime.degree() != D)) {
    throw PreconditionError("eta' must have cohomological degree 2 D_mu");
  }
  DegreeConstants out;
  out.d_prime = integrate_flag(rd, mu, eta_prime).constant_term();
  if (rd.is_semisimple()) {
    out.d_omega = 0;
  } else {
    Poly e1 = integrate_flag(rd, mu, eta);
    Rational c = e1.coefficient(Monomial::variable(0));
    if (e1 != elementary_symmetric(rd.coordinates, 1) * c) {
      throw InconsistencyError("pushforward of eta is not a multiple of e1");
    }
    out.d_omega = c * omega;
  }
  return out;
}

}  // namespace shtvol
