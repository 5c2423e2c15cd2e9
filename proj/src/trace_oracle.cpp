// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include "shtvol/trace_oracle.hpp"

#include "shtvol/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace shtvol {

namespace {

using Sparse = std::map<Exponents, Rational>;

bool is_diagonal(const MatrixQ& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j && m(i, j) != 0) return false;
    }
  }
  return true;
}

MatrixQ h1_frobenius(const CurveData& curve) {
  if (curve.g == 0) return MatrixQ(0, 0);
  if (!curve.frobenius) throw PreconditionError("trace oracle needs the H^1 Frobenius matrix");
  return *curve.frobenius;
}

struct Engine {
  const CurveData& curve;
  const GrossMotive& motive;
  const std::vector<TraceLeg>& legs;
  MonomialBasis basis;
  MatrixQ frob;
  std::vector<int> first;  // first generator index of each line
  std::vector<Rational> even_scale;

  Engine(const CurveData& c, const GrossMotive& m, const std::vector<TraceLeg>& l, int dmax)
      : curve(c), motive(m), legs(l), basis(build_monomial_basis(c, m, dmax)), frob(h1_frobenius(c)) {
    int idx = 0;
    for (int i = 0; i < motive.size(); ++i) {
      first.push_back(idx);
      idx += 1 + 2 * curve.g + (motive.degrees[static_cast<std::size_t>(i)] > 1 ? 1 : 0);
    }
    for (const auto& g : basis.generators) {
      const int d = motive.degrees[static_cast<std::size_t>(g.line)];
      if (g.slot == 0) {
        even_scale.push_back(power(curve.q, -d));
      } else if (g.odd) {
        even_scale.push_back(power(curve.q, -d));
      } else {
        even_scale.push_back(power(curve.q, 1 - d));
      }
    }
    for (const auto& leg : legs) {
      if (leg.nabla.rows() != motive.size() || leg.nabla.cols() != motive.size()) {
        throw PreconditionError("operator matrix does not match the motive");
      }
      for (int a = 0; a < motive.size(); ++a) {
        for (int b = 0; b < motive.size(); ++b) {
          if (leg.nabla(a, b) != 0 && motive.degrees[static_cast<std::size_t>(a)] !=
                                          motive.degrees[static_cast<std::size_t>(b)]) {
            throw PreconditionError("operator matrix does not preserve degrees");
          }
        }
      }
    }
  }

  int generator(int line, int slot) const {
    return first[static_cast<std::size_t>(line)] + slot;
  }

  // Number of odd generators of m with index strictly between a and b.
  static int odd_between(const MonomialBasis& basis, const Exponents& m, int a, int b) {
    if (a > b) std::swap(a, b);
    int count = 0;
    for (int k = a + 1; k < b; ++k) {
      if (basis.generators[static_cast<std::size_t>(k)].odd && m[static_cast<std::size_t>(k)] > 0) ++count;
    }
    return count;
  }

  Sparse derivation(const MatrixQ& nabla, const Exponents& m) const {
    Sparse out;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      const Generator& g = basis.generators[k];
      for (int target = 0; target < motive.size(); ++target) {
        const Rational& coeff = nabla(target, g.line);
        if (coeff == 0) continue;
        const int t = generator(target, g.slot);
        Exponents e = m;
        if (!g.odd) {
          e[k] -= 1;
          e[static_cast<std::size_t>(t)] += 1;
          out[e] += coeff * m[k];
        } else {
          if (t != static_cast<int>(k) && m[static_cast<std::size_t>(t)] > 0) continue;
          const int sign = odd_between(basis, m, static_cast<int>(k), t) % 2 == 0 ? 1 : -1;
          e[k] = 0;
          e[static_cast<std::size_t>(t)] = 1;
          out[e] += coeff * sign;
        }
      }
    }
    return out;
  }

  Sparse frobenius_inverse(const Exponents& m) const {
    Rational scalar(1);
    std::vector<std::pair<std::vector<int>, Rational>> odd{{{}, Rational(1)}};
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      const Generator& g = basis.generators[k];
      if (!g.odd) {
        scalar *= power(even_scale[k], m[k]);
        continue;
      }
      std::vector<std::pair<std::vector<int>, Rational>> next;
      for (const auto& [set, coeff] : odd) {
        for (int l = 1; l <= 2 * curve.g; ++l) {
          const Rational& f = frob(l - 1, g.slot - 1);
          if (f == 0) continue;
          const int t = generator(g.line, l);
          bool present = false;
          int greater = 0;
          for (int s : set) {
            if (s == t) present = true;
            if (s > t) ++greater;
          }
          if (present) continue;
          auto ns = set;
          ns.push_back(t);
          std::sort(ns.begin(), ns.end());
          next.emplace_back(std::move(ns), coeff * f * even_scale[k] * (greater % 2 == 0 ? 1 : -1));
        }
      }
      odd = std::move(next);
    }
    Sparse out;
    for (const auto& [set, coeff] : odd) {
      Exponents e = m;
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (basis.generators[k].odd) e[k] = 0;
      }
      for (int s : set) e[static_cast<std::size_t>(s)] = 1;
      out[e] += scalar * coeff;
    }
    return out;
  }

  Sparse gamma(std::size_t j, const Sparse& v) const {
    Sparse out;
    for (const auto& [m, coeff] : v) {
      if (legs[j].c != 0) out[m] += legs[j].c * coeff;
      for (const auto& [e, c] : derivation(legs[j].nabla, m)) out[e] += c * coeff;
    }
    return out;
  }

  Sparse frobenius_inverse(const Sparse& v) const {
    Sparse out;
    for (const auto& [m, coeff] : v) {
      for (const auto& [e, c] : frobenius_inverse(m)) out[e] += c * coeff;
    }
    return out;
  }

  bool diagonal() const {
    if (!is_diagonal(frob)) return false;
    for (const auto& leg : legs) {
      if (!is_diagonal(leg.nabla)) return false;
    }
    return true;
  }

  Rational diagonal_entry_fast(const Exponents& m) const {
    Rational w(1);
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      const Generator& g = basis.generators[k];
      Rational s = g.odd ? even_scale[k] * frob(g.slot - 1, g.slot - 1) : even_scale[k];
      w *= power(s, m[k]);
    }
    for (const auto& leg : legs) {
      Rational c = leg.c;
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k] != 0) c += leg.nabla(basis.generators[k].line, basis.generators[k].line) * m[k];
      }
      w *= c;
    }
    return w;
  }

  Rational diagonal_entry(const Exponents& m) const {
    Sparse v{{m, Rational(1)}};
    for (std::size_t j = 0; j < legs.size(); ++j) v = gamma(j, v);
    v = frobenius_inverse(v);
    auto it = v.find(m);
    return it == v.end() ? Rational(0) : it->second;
  }
};

void enumerate(const std::vector<Generator>& gens, std::size_t k, int remaining, Exponents& current,
               std::vector<std::vector<Exponents>>& out, int dmax) {
  if (k == gens.size()) {
    out[static_cast<std::size_t>(dmax - remaining)].push_back(current);
    return;
  }
  const int deg = gens[k].degree;
  const int cap = gens[k].odd ? 1 : remaining / deg;
  for (int e = 0; e <= cap && e * deg <= remaining; ++e) {
    current[k] = e;
    enumerate(gens, k + 1, remaining - e * deg, current, out, dmax);
  }
  current[k] = 0;
}

}  // namespace

std::vector<TraceLeg> trace_legs(const RootDatum& rd, const std::vector<LegSpec>& legs) {
  std::vector<TraceLeg> out;
  for (const auto& leg : legs) {
    EigenweightReport rep = eigenweight_report(rd, leg.mu, leg.eta);
    DegreeConstants dc = degree_constants(rd, leg.mu, leg.eta, leg.eta_prime, leg.omega);
    out.push_back({dc.d_omega + dc.d_prime, rep.matrix});
  }
  return out;
}

MonomialBasis build_monomial_basis(const CurveData& curve, const GrossMotive& motive, int dmax) {
  MonomialBasis b;
  b.dmax = dmax;
  for (int i = 0; i < motive.size(); ++i) {
    const int d = motive.degrees[static_cast<std::size_t>(i)];
    if (d < 1) throw PreconditionError("motive line of degree < 1");
    b.generators.push_back({i, 0, 2 * d, false});
    for (int k = 1; k <= 2 * curve.g; ++k) b.generators.push_back({i, k, 2 * d - 1, true});
    if (d > 1) b.generators.push_back({i, 2 * curve.g + 1, 2 * d - 2, false});
  }
  for (const auto& g : b.generators) {
    if (g.degree > dmax) throw PreconditionError("truncation degree is below a generator degree");
  }
  b.by_degree.assign(static_cast<std::size_t>(dmax + 1), {});
  Exponents current(b.generators.size(), 0);
  enumerate(b.generators, 0, dmax, current, b.by_degree, dmax);
  return b;
}

std::vector<DegreeOperators> build_operator(const CurveData& curve, const GrossMotive& motive,
                                            const std::vector<TraceLeg>& legs, int dmax) {
  Engine eng(curve, motive, legs, dmax);
  std::vector<DegreeOperators> out;
  for (int i = 0; i <= dmax; ++i) {
    const auto& mons = eng.basis.by_degree[static_cast<std::size_t>(i)];
    std::map<Exponents, Eigen::Index> index;
    for (std::size_t k = 0; k < mons.size(); ++k) index[mons[k]] = static_cast<Eigen::Index>(k);
    const auto n = static_cast<Eigen::Index>(mons.size());
    DegreeOperators op{i, MatrixQ::Zero(n, n), {}};
    for (std::size_t k = 0; k < mons.size(); ++k) {
      for (const auto& [e, c] : eng.frobenius_inverse(mons[k])) op.frobenius_inverse(index.at(e), static_cast<Eigen::Index>(k)) += c;
    }
    for (std::size_t j = 0; j < legs.size(); ++j) {
      MatrixQ g = MatrixQ::Zero(n, n);
      for (std::size_t k = 0; k < mons.size(); ++k) {
        for (const auto& [e, c] : eng.gamma(j, Sparse{{mons[k], Rational(1)}})) {
          g(index.at(e), static_cast<Eigen::Index>(k)) += c;
        }
      }
      op.gamma.push_back(std::move(g));
    }
    out.push_back(std::move(op));
  }
  return out;
}

TraceRun truncated_trace(const CurveData& curve, const GrossMotive& motive, const std::vector<TraceLeg>& legs,
                         int dmax, long dim_bun, TraceOptions options) {
  Engine eng(curve, motive, legs, dmax);
  TraceRun run;
  run.dmax = dmax;
  run.q_power = power(curve.q, dim_bun);
  run.diagonal_path = !options.force_generic && eng.diagonal();
  Rational sum(0);
  for (int i = 0; i <= dmax; ++i) {
    Rational t(0);
    for (const auto& m : eng.basis.by_degree[static_cast<std::size_t>(i)]) {
      t += run.diagonal_path ? eng.diagonal_entry_fast(m) : eng.diagonal_entry(m);
    }
    t *= run.q_power;
    if (i % 2 == 1) t = -t;
    sum += t;
    run.terms.push_back(t);
    run.partial_sums.push_back(sum);
  }
  run.value = sum;

  int top = 0;
  for (const auto& g : eng.basis.generators) top = std::max(top, g.degree);
  run.burn_in = std::max(dmax / 2, top + 2);
  double rho = 0.0;
  for (int i = run.burn_in; i <= dmax; ++i) {
    const double prev = std::fabs(to_double(run.terms[static_cast<std::size_t>(i - 2)]));
    if (prev == 0.0) continue;
    rho = std::max(rho, std::fabs(to_double(run.terms[static_cast<std::size_t>(i)])) / prev);
  }
  run.decay_ratio = std::sqrt(rho);
  const double last = std::fabs(to_double(run.terms[static_cast<std::size_t>(dmax)])) +
                      std::fabs(to_double(run.terms[static_cast<std::size_t>(dmax - 1)]));
  run.tail_bound = rho < 1.0 ? last * rho / (1.0 - rho) : std::numeric_limits<double>::infinity();
  return run;
}

Rational factorized_trace(const CurveData& curve, const GrossMotive& motive, const std::vector<TraceLeg>& legs,
                          int dmax, long dim_bun) {
  const int n = motive.size();
  for (const auto& leg : legs) {
    if (!is_diagonal(leg.nabla)) throw PreconditionError("factorized trace needs diagonal operators");
  }
  // Operator polynomial in the per-line generator counts N_i.
  Poly op = Poly::constant(n, 1);
  for (const auto& leg : legs) {
    Poly p = Poly::constant(n, leg.c);
    for (int i = 0; i < n; ++i) p.add_term(Monomial::variable(i), leg.nabla(i, i));
    op *= p;
  }
  const int r = static_cast<int>(legs.size());
  // Odd generators contribute the signed elementary symmetric functions of q^{-d} F.
  std::vector<Rational> charpoly;
  if (curve.g > 0) charpoly = characteristic_polynomial(h1_frobenius(curve));
  // moments[i][k][deg] = sum over line-i monomials of degree deg of (-1)^deg weight N^k
  std::vector<std::vector<std::vector<Rational>>> moments(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int d = motive.degrees[static_cast<std::size_t>(i)];
    auto& mom = moments[static_cast<std::size_t>(i)];
    mom.assign(static_cast<std::size_t>(r + 1), std::vector<Rational>(static_cast<std::size_t>(dmax + 1)));
    const Rational l0 = power(curve.q, -d), l2 = power(curve.q, 1 - d);
    for (int a0 = 0; 2 * d * a0 <= dmax; ++a0) {
      for (int a2 = 0; (d > 1 || a2 == 0) && 2 * d * a0 + (2 * d - 2) * a2 <= dmax; ++a2) {
        for (int m = 0; m <= 2 * curve.g; ++m) {
          const int deg = 2 * d * a0 + (2 * d - 2) * a2 + (2 * d - 1) * m;
          if (deg > dmax) break;
          // e_m of the eigenvalues is (-1)^m times the coefficient of t^{2g-m} of det(tI - F)
          Rational em = m == 0 ? Rational(1) : charpoly[static_cast<std::size_t>(2 * curve.g - m)] * (m % 2 == 0 ? 1 : -1);
          Rational w = power(l0, a0) * power(l2, a2) * em * power(curve.q, -static_cast<long>(d) * m);
          if (deg % 2 == 1) w = -w;
          const int count = a0 + a2 + m;
          Rational nk(1);
          for (int k = 0; k <= r; ++k) {
            mom[static_cast<std::size_t>(k)][static_cast<std::size_t>(deg)] += w * nk;
            nk *= count;
          }
        }
      }
    }
  }
  Rational total(0);
  for (const auto& [mono, coeff] : op.terms()) {
    std::vector<Rational> acc(static_cast<std::size_t>(dmax + 1));
    acc[0] = 1;
    for (int i = 0; i < n; ++i) {
      const auto& seq = moments[static_cast<std::size_t>(i)][static_cast<std::size_t>(mono.exponent(i))];
      std::vector<Rational> next(static_cast<std::size_t>(dmax + 1));
      for (int a = 0; a <= dmax; ++a) {
        if (acc[static_cast<std::size_t>(a)] == 0) continue;
        for (int b = 0; a + b <= dmax; ++b) {
          next[static_cast<std::size_t>(a + b)] += acc[static_cast<std::size_t>(a)] * seq[static_cast<std::size_t>(b)];
        }
      }
      acc = std::move(next);
    }
    Rational s(0);
    for (const auto& x : acc) s += x;
    total += coeff * s;
  }
  return total * power(curve.q, dim_bun);
}

Rational compact_support_trace(const CurveData& curve, const GrossMotive& motive, const std::vector<TraceLeg>& legs,
                               int dmax, long dim_bun) {
  auto ops = build_operator(curve, motive, legs, dmax);
  const Rational qd = power(curve.q, dim_bun);
  Rational total(0);
  for (const auto& op : ops) {
    const auto n = op.frobenius_inverse.rows();
    if (n == 0) continue;
    // Frobenius on H_c^{2dim-i} is q^dim times the adjoint of Frob^{-1} on H^i,
    // and the compactly supported correspondence acts by the adjoint of Gamma.
    MatrixQ frob_c = op.frobenius_inverse.transpose() * qd;
    MatrixQ prod = MatrixQ::Identity(n, n);
    for (const auto& g : op.gamma) prod = prod * g.transpose();
    MatrixQ m = prod * frob_c;
    Rational t = m.trace();
    total += op.degree % 2 == 0 ? t : Rational(-t);
  }
  return total;
}

bool agrees(const TraceRun& run, const Rational& closed) {
  Rational diff = run.value - closed;
  if (diff < 0) diff = -diff;
  Rational absc = closed < 0 ? Rational(-closed) : closed;
  const double tol = std::max(1e-6 * to_double(absc), run.tail_bound);
  return to_double(diff) <= tol;
}

}  // namespace shtvol
