// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include "shtvol/characters.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace shtvol {

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm& a, const Perm& b) {
  Perm out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[static_cast<std::size_t>(b[k])];
  return out;
}

std::vector<Perm> all_permutations(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<int> cycle_type(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  std::vector<int> lengths;
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s]) continue;
    int len = 0;
    for (std::size_t k = s; !seen[k]; k = static_cast<std::size_t>(p[k])) {
      seen[k] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

std::string perm_name(const Perm& p) {
  std::string s = "[";
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? "," : "") + std::to_string(p[k] + 1);
  return s + "]";
}

FiniteGroup symmetric_group(int n, const std::vector<std::pair<std::vector<int>, std::vector<long>>>& by_type,
                            const std::vector<std::string>& names) {
  auto perms = all_permutations(n);
  std::map<Perm, int> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> table(perms.size(), std::vector<int>(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a) {
    for (std::size_t b = 0; b < perms.size(); ++b) table[a][b] = index[compose(perms[a], perms[b])];
  }
  std::vector<Irreducible> irr;
  for (std::size_t r = 0; r < names.size(); ++r) {
    Irreducible rho{names[r], 0, {}};
    for (const auto& p : perms) {
      auto ct = cycle_type(p);
      auto it = std::find_if(by_type.begin(), by_type.end(), [&](const auto& e) { return e.first == ct; });
      rho.character.push_back(Rational(it->second[r]));
    }
    rho.dim = static_cast<int>(rho.character[0].get_num().get_si());
    irr.push_back(std::move(rho));
  }
  FiniteGroup g = make_group("s" + std::to_string(n), std::move(table), std::move(irr));
  for (std::size_t i = 0; i < perms.size(); ++i) g.element_names[i] = perm_name(perms[i]);
  return g;
}

FiniteGroup elementary_abelian(const std::string& name, int rank) {
  const int n = 1 << rank;
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = a ^ b;
  }
  std::vector<Irreducible> irr;
  for (int chi = 0; chi < n; ++chi) {
    Irreducible rho{chi == 0 ? "triv" : "chi" + std::to_string(chi), 1, {}};
    for (int x = 0; x < n; ++x) rho.character.push_back(__builtin_popcount(static_cast<unsigned>(chi & x)) % 2 ? -1 : 1);
    irr.push_back(std::move(rho));
  }
  return make_group(name, std::move(table), std::move(irr));
}

}  // namespace

FiniteGroup make_group(const std::string& name, std::vector<std::vector<int>> table,
                       std::vector<Irreducible> irreducibles) {
  FiniteGroup g;
  g.name = name;
  g.table = std::move(table);
  const int n = g.order();
  if (n == 0) throw PreconditionError("group must be nonempty");
  for (const auto& row : g.table) {
    if (static_cast<int>(row.size()) != n) throw PreconditionError("multiplication table must be square");
    std::vector<int> sorted = row;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < n; ++k) {
      if (sorted[static_cast<std::size_t>(k)] != k) throw PreconditionError("multiplication table rows must be permutations");
    }
  }
  g.identity = -1;
  for (int e = 0; e < n && g.identity < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n; ++a) ok = ok && g.multiply(e, a) == a && g.multiply(a, e) == a;
    if (ok) g.identity = e;
  }
  if (g.identity < 0) throw PreconditionError("multiplication table has no identity");
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (g.multiply(g.multiply(a, b), c) != g.multiply(a, g.multiply(b, c))) {
          throw PreconditionError("multiplication table is not associative");
        }
      }
    }
  }
  g.inverse.resize(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g.multiply(a, b) == g.identity) g.inverse[static_cast<std::size_t>(a)] = b;
    }
  }
  std::vector<int> class_of(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    if (class_of[static_cast<std::size_t>(a)] >= 0) continue;
    std::vector<int> cls;
    for (int h = 0; h < n; ++h) {
      int c = g.multiply(g.multiply(h, a), g.inverse[static_cast<std::size_t>(h)]);
      if (class_of[static_cast<std::size_t>(c)] < 0) {
        class_of[static_cast<std::size_t>(c)] = static_cast<int>(g.classes.size());
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    g.classes.push_back(std::move(cls));
  }
  g.irreducibles = std::move(irreducibles);
  if (g.irreducibles.size() != g.classes.size()) throw PreconditionError("character table is not square");
  for (const auto& rho : g.irreducibles) {
    if (static_cast<int>(rho.character.size()) != n) throw PreconditionError("character has the wrong length");
    if (rho.character[static_cast<std::size_t>(g.identity)] != rho.dim) throw PreconditionError("character value at 1 must be the dimension");
    for (const auto& cls : g.classes) {
      for (int x : cls) {
        if (rho.character[static_cast<std::size_t>(x)] != rho.character[static_cast<std::size_t>(cls[0])]) {
          throw PreconditionError("character is not a class function");
        }
      }
    }
  }
  for (int k = 0; k < n; ++k) {
    if (g.irreducibles[0].character[static_cast<std::size_t>(k)] != 1) throw PreconditionError("first character must be trivial");
  }
  g.element_names.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) g.element_names[static_cast<std::size_t>(k)] = "g" + std::to_string(k);
  for (std::size_t r = 0; r < g.irreducibles.size(); ++r) {
    GroupFunction d = dual(g, g.irreducibles[r].character);
    int match = -1;
    for (std::size_t s = 0; s < g.irreducibles.size(); ++s) {
      if (g.irreducibles[s].character == d) match = static_cast<int>(s);
    }
    if (match < 0) throw PreconditionError("dual of a character is not in the table");
    g.dual.push_back(match);
  }
  for (std::size_t r = 0; r < g.irreducibles.size(); ++r) {
    for (std::size_t s = 0; s < g.irreducibles.size(); ++s) {
      Rational p = pairing(g, g.irreducibles[r].character, g.irreducibles[static_cast<std::size_t>(g.dual[s])].character);
      if (p != (r == s ? 1 : 0)) throw PreconditionError("characters are not orthonormal");
    }
  }
  return g;
}

FiniteGroup make_group(const std::string& name) {
  if (name == "trivial") {
    return make_group(name, {{0}}, {Irreducible{"triv", 1, {Rational(1)}}});
  }
  if (name == "z2") {
    FiniteGroup g = elementary_abelian(name, 1);
    g.element_names = {"e", "t"};
    return g;
  }
  if (name == "z2xz2") {
    FiniteGroup g = elementary_abelian(name, 2);
    g.element_names = {"(0,0)", "(1,0)", "(0,1)", "(1,1)"};
    return g;
  }
  if (name == "s3") {
    return symmetric_group(3, {{{1, 1, 1}, {1, 1, 2}}, {{2, 1}, {1, -1, 0}}, {{3}, {1, 1, -1}}},
                           {"triv", "sign", "std"});
  }
  if (name == "s4") {
    return symmetric_group(4,
                           {{{1, 1, 1, 1}, {1, 1, 3, 3, 2}},
                            {{2, 1, 1}, {1, -1, 1, -1, 0}},
                            {{2, 2}, {1, 1, -1, -1, 2}},
                            {{3, 1}, {1, 1, 0, 0, -1}},
                            {{4}, {1, -1, -1, 1, 0}}},
                           {"triv", "sign", "std", "std_sign", "two"});
  }
  throw PreconditionError("unsupported group: " + name);
}

GroupFunction delta(const FiniteGroup& g, int element) {
  GroupFunction f(static_cast<std::size_t>(g.order()));
  f.at(static_cast<std::size_t>(element)) = 1;
  return f;
}

GroupFunction convolve(const FiniteGroup& g, const GroupFunction& phi, const GroupFunction& psi) {
  const int n = g.order();
  if (static_cast<int>(phi.size()) != n || static_cast<int>(psi.size()) != n) throw PreconditionError("group mismatch");
  GroupFunction out(static_cast<std::size_t>(n));
  for (int h = 0; h < n; ++h) {
    if (psi[static_cast<std::size_t>(h)] == 0) continue;
    int hinv = g.inverse[static_cast<std::size_t>(h)];
    for (int x = 0; x < n; ++x) {
      const Rational& a = phi[static_cast<std::size_t>(g.multiply(x, hinv))];
      if (a != 0) out[static_cast<std::size_t>(x)] += a * psi[static_cast<std::size_t>(h)];
    }
  }
  for (auto& v : out) v /= n;
  return out;
}

GroupFunction dual(const FiniteGroup& g, const GroupFunction& phi) {
  GroupFunction out(phi.size());
  for (std::size_t x = 0; x < phi.size(); ++x) out[x] = phi[static_cast<std::size_t>(g.inverse[x])];
  return out;
}

Rational pairing(const FiniteGroup& g, const GroupFunction& phi, const GroupFunction& psi) {
  if (phi.size() != psi.size() || static_cast<int>(phi.size()) != g.order()) throw PreconditionError("group mismatch");
  Rational s(0);
  for (std::size_t x = 0; x < phi.size(); ++x) s += phi[x] * psi[x];
  return s / g.order();
}

std::vector<Rational> natural_coefficients(const FiniteGroup& g, const GroupFunction& phi) {
  std::vector<Rational> a;
  for (std::size_t r = 0; r < g.irreducibles.size(); ++r) {
    a.push_back(pairing(g, phi, g.irreducibles[static_cast<std::size_t>(g.dual[r])].character));
  }
  return a;
}

GroupFunction natural_projection(const FiniteGroup& g, const GroupFunction& phi) {
  auto a = natural_coefficients(g, phi);
  GroupFunction out(static_cast<std::size_t>(g.order()));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t x = 0; x < out.size(); ++x) out[x] += a[r] * g.irreducibles[r].character[x];
  }
  return out;
}

GroupFunction phi_tuple(const FiniteGroup& g, const std::vector<int>& sigma, const std::vector<int>& signs, int j) {
  if (sigma.size() != signs.size()) throw PreconditionError("sigma and sign tuples differ in length");
  GroupFunction out(static_cast<std::size_t>(g.order()));
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (signs[i] != 1 && signs[i] != -1) throw PreconditionError("signs must be +1 or -1");
    int s = (j % 2 != 0 && signs[i] < 0) ? -1 : 1;
    out.at(static_cast<std::size_t>(sigma[i])) += s;
  }
  return out;
}

}  // namespace shtvol
