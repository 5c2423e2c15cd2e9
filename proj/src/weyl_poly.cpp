// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include "shtvol/weyl_poly.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "shtvol/linalg.hpp"

namespace shtvol {

namespace {

Root unit_root(int n, int i, int si, int j = -1, int sj = 0) {
  Root r = Root::Zero(n);
  r(i) = si;
  if (j >= 0) r(j) = sj;
  return r;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::GL: return "gl";
    case Family::SL: return "sl";
    case Family::PGL: return "pgl";
    case Family::SOOdd: return "so-odd";
    case Family::SOEven: return "so-even";
  }
  return "?";
}

Poly squares_elementary(int m, int k) {
  std::vector<Poly> squares;
  for (int i = 0; i < m; ++i) squares.push_back(Poly::variable(m, i).pow(2));
  Poly e = elementary_symmetric(m, k);
  return e.compose(squares);
}

// Exponent vectors a with sum_i a_i * weights[i] == target.
void weighted_compositions(const std::vector<int>& weights, int target, std::size_t index,
                           std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (index == weights.size()) {
    if (target == 0) out.push_back(current);
    return;
  }
  for (int a = 0; a * weights[index] <= target; ++a) {
    current[index] = a;
    weighted_compositions(weights, target - a * weights[index], index + 1, current, out);
  }
  current[index] = 0;
}

Poly solve_in_generators(const std::vector<Poly>& gens, const Poly& f) {
  const int ngen = static_cast<int>(gens.size());
  std::vector<int> weights;
  for (const auto& g : gens) weights.push_back(g.degree());
  Poly result(ngen);
  std::map<int, Poly> components;
  for (const auto& [m, c] : f.terms()) {
    auto [it, inserted] = components.try_emplace(m.degree(), Poly(f.nvars()));
    it->second.add_term(m, c);
  }
  std::vector<std::vector<Poly>> powers(static_cast<std::size_t>(ngen));
  auto gen_power = [&](int i, int e) -> const Poly& {
    auto& p = powers[static_cast<std::size_t>(i)];
    if (p.empty()) p.push_back(Poly::constant(f.nvars(), 1));
    while (static_cast<int>(p.size()) <= e) p.push_back(p.back() * gens[static_cast<std::size_t>(i)]);
    return p[static_cast<std::size_t>(e)];
  };
  for (const auto& [deg, part] : components) {
    std::vector<std::vector<int>> exps;
    std::vector<int> current(static_cast<std::size_t>(ngen), 0);
    weighted_compositions(weights, deg, 0, current, exps);
    std::vector<Poly> columns;
    std::map<Monomial, Eigen::Index, std::greater<Monomial>> row_index;
    for (const auto& [m, c] : part.terms()) row_index.try_emplace(m, static_cast<Eigen::Index>(row_index.size()));
    for (const auto& a : exps) {
      Poly col = Poly::constant(f.nvars(), 1);
      for (int i = 0; i < ngen; ++i) {
        if (a[static_cast<std::size_t>(i)] > 0) col *= gen_power(i, a[static_cast<std::size_t>(i)]);
      }
      for (const auto& [m, c] : col.terms()) row_index.try_emplace(m, static_cast<Eigen::Index>(row_index.size()));
      columns.push_back(std::move(col));
    }
    MatrixQ a = MatrixQ::Zero(static_cast<Eigen::Index>(row_index.size()), static_cast<Eigen::Index>(columns.size()));
    VectorQ b = VectorQ::Zero(static_cast<Eigen::Index>(row_index.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
      for (const auto& [m, c] : columns[j].terms()) a(row_index[m], static_cast<Eigen::Index>(j)) = c;
    }
    for (const auto& [m, c] : part.terms()) b(row_index[m]) = c;
    auto x = solve(a, b);
    if (!x) throw InconsistencyError("polynomial is not expressible in the fundamental invariants");
    if (rank(a) != a.cols()) throw InconsistencyError("fundamental invariants are not independent");
    for (std::size_t j = 0; j < exps.size(); ++j) {
      if ((*x)(static_cast<Eigen::Index>(j)) != 0) {
        result.add_term(Monomial::from_exponents(exps[j]), (*x)(static_cast<Eigen::Index>(j)));
      }
    }
  }
  return result;
}

std::vector<Poly> gl_elementary(int n) {
  std::vector<Poly> gens;
  for (int k = 1; k <= n; ++k) gens.push_back(elementary_symmetric(n, k));
  return gens;
}

}  // namespace

std::string RootDatum::label() const {
  int n = (family == Family::SOOdd || family == Family::SOEven) ? rank : coordinates;
  return family_name(family) + ":" + std::to_string(n);
}

Poly elementary_symmetric(int nvars, int k, int first, int count) {
  if (count < 0) count = nvars - first;
  // Coefficients of prod (1 + x_j u) collected degree by degree.
  std::vector<Poly> e(static_cast<std::size_t>(k + 1), Poly(nvars));
  e[0] = Poly::constant(nvars, 1);
  for (int j = first; j < first + count; ++j) {
    Poly xj = Poly::variable(nvars, j);
    for (int d = k; d >= 1; --d) e[static_cast<std::size_t>(d)] += e[static_cast<std::size_t>(d - 1)] * xj;
  }
  return k < 0 ? Poly(nvars) : e[static_cast<std::size_t>(k)];
}

Poly complete_homogeneous(int nvars, int k) {
  if (k < 0) return Poly(nvars);
  std::vector<Poly> h(static_cast<std::size_t>(k + 1), Poly(nvars));
  h[0] = Poly::constant(nvars, 1);
  for (int j = 0; j < nvars; ++j) {
    Poly xj = Poly::variable(nvars, j);
    for (int d = 1; d <= k; ++d) h[static_cast<std::size_t>(d)] += h[static_cast<std::size_t>(d - 1)] * xj;
  }
  return h[static_cast<std::size_t>(k)];
}

RootDatum build_root_datum(Family family, int n) {
  RootDatum rd;
  rd.family = family;
  if (n < 1) throw PreconditionError("rank must be positive");
  switch (family) {
    case Family::GL:
    case Family::SL:
    case Family::PGL: {
      if (family != Family::GL && n < 2) throw PreconditionError("SL/PGL require n >= 2");
      if (n > Monomial::kMaxVariables) throw PreconditionError("unsupported rank");
      rd.coordinates = n;
      rd.rank = family == Family::GL ? n : n - 1;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i != j) rd.roots.push_back(unit_root(n, i, 1, j, -1));
        }
      }
      for (int i = 0; i + 1 < n; ++i) rd.simple_roots.push_back(unit_root(n, i, 1, i + 1, -1));
      rd.coroot_lattice = Eigen::MatrixXi::Zero(n, n - 1);
      for (int i = 0; i + 1 < n; ++i) {
        rd.coroot_lattice(i, i) = 1;
        rd.coroot_lattice(i + 1, i) = -1;
      }
      auto gens = gl_elementary(n);
      for (int k = (family == Family::GL ? 1 : 2); k <= n; ++k) {
        rd.fundamental_invariants.push_back({"e" + std::to_string(k), gens[static_cast<std::size_t>(k - 1)], 2 * k});
      }
      rd.pi1_order = family == Family::PGL ? n : 1;
      rd.dim_g = family == Family::GL ? n * n : n * n - 1;
      break;
    }
    case Family::SOOdd:
    case Family::SOEven: {
      const int m = n;
      if (family == Family::SOEven && m < 2) throw PreconditionError("SO(2m) requires m >= 2");
      if (m > Monomial::kMaxVariables) throw PreconditionError("unsupported rank");
      rd.coordinates = m;
      rd.rank = m;
      for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
          for (int si : {1, -1}) {
            for (int sj : {1, -1}) rd.roots.push_back(unit_root(m, i, si, j, sj));
          }
        }
        if (family == Family::SOOdd) {
          rd.roots.push_back(unit_root(m, i, 1));
          rd.roots.push_back(unit_root(m, i, -1));
        }
      }
      for (int i = 0; i + 1 < m; ++i) rd.simple_roots.push_back(unit_root(m, i, 1, i + 1, -1));
      if (family == Family::SOOdd) {
        rd.simple_roots.push_back(unit_root(m, m - 1, 1));
      } else {
        rd.simple_roots.push_back(unit_root(m, m - 2, 1, m - 1, 1));
      }
      rd.coroot_lattice = Eigen::MatrixXi::Zero(m, m);
      if (m == 1) {
        rd.coroot_lattice(0, 0) = 2;
      } else {
        for (int i = 0; i + 1 < m; ++i) {
          rd.coroot_lattice(i, i) = 1;
          rd.coroot_lattice(i + 1, i) = -1;
        }
        rd.coroot_lattice(m - 2, m - 1) = 1;
        rd.coroot_lattice(m - 1, m - 1) = 1;
      }
      const int top = family == Family::SOOdd ? m : m - 1;
      for (int k = 1; k <= top; ++k) {
        rd.fundamental_invariants.push_back({"e" + std::to_string(k) + "^(2)", squares_elementary(m, k), 4 * k});
      }
      if (family == Family::SOEven) {
        Poly pf = Poly::constant(m, 1);
        for (int i = 0; i < m; ++i) pf *= Poly::variable(m, i);
        rd.fundamental_invariants.push_back({"Pf", pf, 2 * m});
      }
      rd.pi1_order = 2;
      rd.dim_g = family == Family::SOOdd ? m * (2 * m + 1) : m * (2 * m - 1);
      break;
    }
  }
  return rd;
}

RootDatum parse_root_datum(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw SchemaError("group spec must look like 'gl:n': " + spec);
  std::string fam = spec.substr(0, colon);
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(spec.substr(colon + 1), &used);
    if (used != spec.size() - colon - 1) throw SchemaError("bad rank in group spec: " + spec);
  } catch (const std::logic_error&) {
    throw SchemaError("bad rank in group spec: " + spec);
  }
  static const std::map<std::string, Family> families = {{"gl", Family::GL},
                                                         {"sl", Family::SL},
                                                         {"pgl", Family::PGL},
                                                         {"so-odd", Family::SOOdd},
                                                         {"so-even", Family::SOEven}};
  auto it = families.find(fam);
  if (it == families.end()) throw SchemaError("unsupported group family: " + fam);
  return build_root_datum(it->second, n);
}

Rational pairing(const Root& alpha, const Coweight& mu) {
  Rational s(0);
  for (Eigen::Index k = 0; k < alpha.size(); ++k) {
    if (alpha(k) != 0) s += Rational(alpha(k)) * mu(k);
  }
  return s;
}

bool in_coweight_lattice(const RootDatum& rd, const Coweight& mu) {
  if (mu.size() != rd.coordinates) return false;
  auto integral = [](const Rational& x) { return x.get_den() == 1; };
  Rational sum(0);
  for (Eigen::Index k = 0; k < mu.size(); ++k) sum += mu(k);
  switch (rd.family) {
    case Family::GL:
    case Family::SOOdd:
    case Family::SOEven:
      for (Eigen::Index k = 0; k < mu.size(); ++k) {
        if (!integral(mu(k))) return false;
      }
      return true;
    case Family::SL:
      for (Eigen::Index k = 0; k < mu.size(); ++k) {
        if (!integral(mu(k))) return false;
      }
      return sum == 0;
    case Family::PGL:
      if (sum != 0) return false;
      for (Eigen::Index k = 1; k < mu.size(); ++k) {
        if (!integral(Rational(mu(k) - mu(0)))) return false;
      }
      return true;
  }
  return false;
}

bool in_coroot_lattice(const RootDatum& rd, const Coweight& mu) {
  Rational sum(0);
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    if (mu(k).get_den() != 1) return false;
    sum += mu(k);
  }
  if (rd.family == Family::SOOdd || rd.family == Family::SOEven) {
    return sum.get_num() % 2 == 0;
  }
  return sum == 0;
}

bool is_minuscule(const RootDatum& rd, const Coweight& mu) {
  for (const auto& alpha : rd.roots) {
    Rational p = pairing(alpha, mu);
    if (p != 0 && p != 1 && p != -1) return false;
  }
  return true;
}

bool is_dominant(const RootDatum& rd, const Coweight& mu) {
  for (const auto& alpha : rd.simple_roots) {
    if (pairing(alpha, mu) < 0) return false;
  }
  return true;
}

Poly root_form(const Root& alpha, int nvars) {
  Poly p(nvars);
  for (Eigen::Index k = 0; k < alpha.size(); ++k) {
    if (alpha(k) != 0) p.add_term(Monomial::variable(static_cast<int>(k)), Rational(alpha(k)));
  }
  return p;
}

WeylElement WeylElement::identity(int n) {
  WeylElement w;
  w.perm.resize(static_cast<std::size_t>(n));
  w.sign.assign(static_cast<std::size_t>(n), 1);
  for (int k = 0; k < n; ++k) w.perm[static_cast<std::size_t>(k)] = k;
  return w;
}

WeylElement operator*(const WeylElement& a, const WeylElement& b) {
  WeylElement out = WeylElement::identity(static_cast<int>(a.perm.size()));
  for (std::size_t k = 0; k < b.perm.size(); ++k) {
    auto mid = static_cast<std::size_t>(b.perm[k]);
    out.perm[k] = a.perm[mid];
    out.sign[k] = b.sign[k] * a.sign[mid];
  }
  return out;
}

WeylElement WeylElement::inverse() const {
  WeylElement out = identity(static_cast<int>(perm.size()));
  for (std::size_t k = 0; k < perm.size(); ++k) {
    auto image = static_cast<std::size_t>(perm[k]);
    out.perm[image] = static_cast<int>(k);
    out.sign[image] = sign[k];
  }
  return out;
}

void validate_weyl_element(const RootDatum& rd, const WeylElement& w) {
  if (static_cast<int>(w.perm.size()) != rd.coordinates || w.sign.size() != w.perm.size()) {
    throw PreconditionError("Weyl element has the wrong size");
  }
  std::vector<int> sorted = w.perm;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < rd.coordinates; ++k) {
    if (sorted[static_cast<std::size_t>(k)] != k) throw PreconditionError("Weyl element is not a permutation");
  }
  int negatives = 0;
  for (int s : w.sign) {
    if (s != 1 && s != -1) throw PreconditionError("Weyl element signs must be +-1");
    if (s == -1) ++negatives;
  }
  bool type_a = rd.family == Family::GL || rd.family == Family::SL || rd.family == Family::PGL;
  if (type_a && negatives > 0) throw PreconditionError("sign changes are not allowed in type A");
  if (rd.family == Family::SOEven && negatives % 2 != 0) {
    throw PreconditionError("type D Weyl elements change an even number of signs");
  }
}

WeylElement reflection(const RootDatum& rd, const Root& alpha) {
  WeylElement w = WeylElement::identity(rd.coordinates);
  std::vector<int> support;
  for (int k = 0; k < rd.coordinates; ++k) {
    if (alpha(k) != 0) support.push_back(k);
  }
  if (support.size() == 1) {
    w.sign[static_cast<std::size_t>(support[0])] = -1;
  } else if (support.size() == 2) {
    auto i = static_cast<std::size_t>(support[0]);
    auto j = static_cast<std::size_t>(support[1]);
    int s = -alpha(support[0]) * alpha(support[1]);  // +1 for x_i - x_j, -1 for x_i + x_j
    w.perm[i] = static_cast<int>(j);
    w.perm[j] = static_cast<int>(i);
    w.sign[i] = s;
    w.sign[j] = s;
  } else {
    throw PreconditionError("not a classical root");
  }
  return w;
}

Coweight act(const WeylElement& w, const Coweight& mu) {
  Coweight out(mu.size());
  for (std::size_t k = 0; k < w.perm.size(); ++k) {
    out(w.perm[k]) = mu(static_cast<Eigen::Index>(k)) * w.sign[k];
  }
  return out;
}

Poly act(const RootDatum& rd, const WeylElement& w, const Poly& f) {
  if (f.nvars() < rd.coordinates) throw PreconditionError("polynomial has too few variables");
  Poly out(f.nvars());
  const int n = rd.coordinates;
  std::vector<int> exps(static_cast<std::size_t>(f.nvars()));
  for (const auto& [m, c] : f.terms()) {
    int parity = 0;
    for (int k = 0; k < f.nvars(); ++k) exps[static_cast<std::size_t>(k)] = 0;
    for (int k = 0; k < f.nvars(); ++k) {
      int e = m.exponent(k);
      if (k < n) {
        exps[static_cast<std::size_t>(w.perm[static_cast<std::size_t>(k)])] = e;
        if (w.sign[static_cast<std::size_t>(k)] < 0) parity += e;
      } else {
        exps[static_cast<std::size_t>(k)] = e;
      }
    }
    out.add_term(Monomial::from_exponents(exps), parity % 2 ? Rational(-c) : c);
  }
  return out;
}

std::vector<WeylElement> weyl_cosets(const RootDatum& rd, const Coweight& mu) {
  if (!in_coweight_lattice(rd, mu)) throw PreconditionError("coweight is not in the coweight lattice");
  auto key = [](const Coweight& v) { return std::vector<Rational>(v.data(), v.data() + v.size()); };
  std::map<std::vector<Rational>, WeylElement> seen;
  std::deque<std::pair<Coweight, WeylElement>> queue;
  std::vector<WeylElement> reps;
  seen.emplace(key(mu), WeylElement::identity(rd.coordinates));
  queue.emplace_back(mu, WeylElement::identity(rd.coordinates));
  reps.push_back(WeylElement::identity(rd.coordinates));
  std::vector<WeylElement> simple;
  for (const auto& a : rd.simple_roots) simple.push_back(reflection(rd, a));
  while (!queue.empty()) {
    auto [point, w] = queue.front();
    queue.pop_front();
    for (const auto& s : simple) {
      Coweight next = act(s, point);
      if (seen.count(key(next))) continue;
      WeylElement sw = s * w;
      seen.emplace(key(next), sw);
      reps.push_back(sw);
      queue.emplace_back(next, sw);
    }
  }
  return reps;
}

std::vector<WeylElement> weyl_group(const RootDatum& rd) {
  std::vector<WeylElement> elements{WeylElement::identity(rd.coordinates)};
  std::vector<WeylElement> simple;
  for (const auto& a : rd.simple_roots) simple.push_back(reflection(rd, a));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& s : simple) {
      WeylElement next = s * elements[i];
      if (std::find(elements.begin(), elements.end(), next) == elements.end()) elements.push_back(next);
    }
  }
  return elements;
}

Poly partial_derivative(const Poly& f, const Coweight& mu) {
  Poly out(f.nvars());
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    if (mu(k) != 0) out += f.derivative(static_cast<int>(k)) * mu(k);
  }
  return out;
}

bool is_weyl_invariant(const RootDatum& rd, const Poly& f) {
  for (const auto& a : rd.simple_roots) {
    if (act(rd, reflection(rd, a), f) != f) return false;
  }
  return true;
}

bool is_stabilizer_invariant(const RootDatum& rd, const Coweight& mu, const Poly& f) {
  for (const auto& a : rd.roots) {
    if (pairing(a, mu) == 0 && act(rd, reflection(rd, a), f) != f) return false;
  }
  return true;
}

Poly normal_form(const RootDatum& rd, const Poly& f) {
  if (!rd.reduces_e1()) return f;
  const int n = rd.coordinates;
  std::vector<Poly> images;
  for (int k = 0; k < f.nvars(); ++k) images.push_back(Poly::variable(f.nvars(), k));
  Poly last(f.nvars());
  for (int k = 0; k + 1 < n; ++k) last -= Poly::variable(f.nvars(), k);
  images[static_cast<std::size_t>(n - 1)] = last;
  return f.compose(images);
}

Poly express_in_invariants(const RootDatum& rd, const Poly& f) {
  if (f.nvars() != rd.coordinates) throw PreconditionError("polynomial lives in the wrong ring");
  if (!is_weyl_invariant(rd, f)) throw PreconditionError("polynomial is not Weyl-invariant");
  if (!rd.reduces_e1()) {
    std::vector<Poly> gens;
    for (const auto& inv : rd.fundamental_invariants) gens.push_back(inv.poly);
    return solve_in_generators(gens, f);
  }
  Poly full = solve_in_generators(gl_elementary(rd.coordinates), f);
  const int ngen = rd.coordinates - 1;
  Poly out(ngen);
  for (const auto& [m, c] : full.terms()) {
    if (m.exponent(0) != 0) continue;
    std::vector<int> e(static_cast<std::size_t>(ngen));
    for (int k = 0; k < ngen; ++k) e[static_cast<std::size_t>(k)] = m.exponent(k + 1);
    out.add_term(Monomial::from_exponents(e), c);
  }
  return out;
}

Poly substitute_invariants(const RootDatum& rd, const Poly& expression) {
  std::vector<Poly> images;
  for (const auto& inv : rd.fundamental_invariants) images.push_back(inv.poly);
  if (expression.nvars() != static_cast<int>(images.size())) {
    throw PreconditionError("expression has the wrong number of generator variables");
  }
  if (images.empty()) return Poly::constant(rd.coordinates, expression.constant_term());
  return expression.compose(images);
}

VectorQ linear_part(const RootDatum& rd, const Poly& expression) {
  const auto ngen = static_cast<Eigen::Index>(rd.fundamental_invariants.size());
  VectorQ v = VectorQ::Zero(ngen);
  for (Eigen::Index i = 0; i < ngen; ++i) v(i) = expression.coefficient(Monomial::variable(static_cast<int>(i)));
  return v;
}

std::vector<std::string> invariant_names(const RootDatum& rd) {
  std::vector<std::string> names;
  for (const auto& inv : rd.fundamental_invariants) names.push_back(inv.name);
  return names;
}

Rational divided_difference_table(const UPolyQ& f, const std::vector<Rational>& points) {
  const std::size_t n = points.size();
  if (n == 0) throw PreconditionError("divided difference needs at least one point");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i] == points[j]) throw PreconditionError("divided difference points must be distinct");
    }
  }
  std::vector<Rational> column(n);
  for (std::size_t i = 0; i < n; ++i) column[i] = f(points[i]);
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      column[i] = (column[i + 1] - column[i]) / (points[i + level] - points[i]);
    }
  }
  return column[0];
}

Rational divided_difference_lagrange(const UPolyQ& f, const std::vector<Rational>& points) {
  Rational total(0);
  for (std::size_t j = 0; j < points.size(); ++j) {
    Rational deriv(1);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i == j) continue;
      if (points[i] == points[j]) throw PreconditionError("divided difference points must be distinct");
      deriv *= points[j] - points[i];
    }
    total += f(points[j]) / deriv;
  }
  return total;
}

}  // namespace shtvol
