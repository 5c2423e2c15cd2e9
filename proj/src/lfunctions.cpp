// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include "shtvol/lfunctions.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>

#include "shtvol/linalg.hpp"

namespace shtvol {

namespace {

UPolyQ substitute_upoly(const UPolyQ& p, const Rational& c, int m) {
  if (p.is_zero()) return p;
  std::vector<Rational> v(static_cast<std::size_t>(p.degree() * m + 1));
  Rational pw(1);
  for (int k = 0; k <= p.degree(); ++k) {
    v[static_cast<std::size_t>(k * m)] = p[k] * pw;
    pw *= c;
  }
  return UPolyQ(std::move(v));
}

UPolyQ one_minus(const Rational& a) { return UPolyQ{Rational(1), Rational(-a)}; }

bool is_prime_power(const Integer& q) {
  if (q < 2) return false;
  Integer n = q;
  for (Integer p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1;
    }
  }
  return true;
}

// Coefficients of f(e^sigma) = sum_k a_k e^{k sigma}.
std::vector<Rational> exp_series(const UPolyQ& p, int order) {
  std::vector<Rational> out(static_cast<std::size_t>(order + 1));
  for (int j = 0; j <= order; ++j) {
    Rational s(0);
    for (int k = 0; k <= p.degree(); ++k) s += p[k] * power(Rational(k), j);
    out[static_cast<std::size_t>(j)] = s / factorial(j);
  }
  return out;
}

std::vector<Rational> series_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

RationalFunction::RationalFunction(UPolyQ numerator, UPolyQ base, int power)
    : num_(std::move(numerator)), base_(std::move(base)), power_(power) {
  if (base_.is_zero()) throw PreconditionError("rational function with zero denominator");
}

Rational RationalFunction::operator()(const Rational& t) const {
  Rational b = base_(t);
  if (power_ > 0 && b == 0) throw PreconditionError("evaluation at a pole");
  return num_(t) / shtvol::power(b, power_);
}

RationalFunction RationalFunction::theta() const {
  if (power_ == 0) return RationalFunction(num_.theta(), base_, 0);
  UPolyQ n = num_.theta() * base_ - num_ * base_.theta() * Rational(power_);
  return RationalFunction(std::move(n), base_, power_ + 1);
}

RationalFunction RationalFunction::theta(int k) const {
  RationalFunction f = *this;
  for (int i = 0; i < k; ++i) f = f.theta();
  return f;
}

RationalFunction RationalFunction::substitute(const Rational& c, int m) const {
  return RationalFunction(substitute_upoly(num_, c, m), substitute_upoly(base_, c, m), power_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.power_ == 0) return RationalFunction(a.num_ * b.num_, b.base_, b.power_);
  if (b.power_ == 0) return RationalFunction(a.num_ * b.num_, a.base_, a.power_);
  if (a.base_ == b.base_) return RationalFunction(a.num_ * b.num_, a.base_, a.power_ + b.power_);
  return RationalFunction(a.num_ * b.num_, a.base_.pow(a.power_) * b.base_.pow(b.power_), 1);
}

std::vector<Rational> RationalFunction::exponential_series(int order) const {
  auto n = exp_series(num_, order);
  auto b = exp_series(base_, order);
  std::vector<Rational> den(static_cast<std::size_t>(order + 1));
  den[0] = 1;
  for (int i = 0; i < power_; ++i) den = series_mul(den, b);
  if (den[0] == 0) throw PreconditionError("series expansion at a pole");
  std::vector<Rational> out(static_cast<std::size_t>(order + 1));
  for (std::size_t j = 0; j < out.size(); ++j) {
    Rational s = n[j];
    for (std::size_t i = 1; i <= j; ++i) s -= den[i] * out[j - i];
    out[j] = s / den[0];
  }
  return out;
}

void validate_curve(const CurveData& c) {
  if (c.q.get_den() != 1 || !is_prime_power(c.q.get_num())) throw PreconditionError("q must be a prime power");
  if (c.g < 0) throw PreconditionError("genus must be non-negative");
  if (c.h1.degree() != 2 * c.g) throw PreconditionError("h1 numerator must have degree 2g");
  if (c.h1[0] != 1) throw PreconditionError("h1 numerator must satisfy P(0) = 1");
  for (int i = 0; i <= 2 * c.g; ++i) {
    if (c.h1[2 * c.g - i] != power(c.q, c.g - i) * c.h1[i]) {
      throw PreconditionError("h1 numerator violates the functional equation");
    }
  }
  for (int i = 0; i <= 2 * c.g; ++i) {
    if (c.h1[i].get_den() != 1) throw PreconditionError("h1 numerator must have integer coefficients");
  }
  if (c.frobenius) {
    const MatrixQ& f = *c.frobenius;
    if (f.rows() != 2 * c.g || f.cols() != 2 * c.g) throw PreconditionError("Frobenius matrix must be 2g x 2g");
    auto cp = characteristic_polynomial(f);
    std::vector<Rational> rev(cp.rbegin(), cp.rend());
    if (!(UPolyQ(rev) == c.h1)) throw PreconditionError("det(1 - tF) does not match the h1 numerator");
  }
  if (c.pairing) {
    const MatrixQ& j = *c.pairing;
    if (j.rows() != 2 * c.g || j.cols() != 2 * c.g) throw PreconditionError("pairing matrix must be 2g x 2g");
    if (j != MatrixQ(-j.transpose())) throw PreconditionError("pairing matrix must be antisymmetric");
    if (c.g > 0 && determinant(j) == 0) throw PreconditionError("pairing matrix must be nondegenerate");
    if (c.frobenius) {
      MatrixQ lhs = c.frobenius->transpose() * j * (*c.frobenius);
      if (lhs != MatrixQ(j * c.q)) throw PreconditionError("Frobenius does not scale the pairing by q");
    }
  }
}

CurveData make_curve(const Rational& q, int g, const UPolyQ& h1, std::optional<MatrixQ> frobenius,
                     std::optional<MatrixQ> pairing) {
  CurveData c{q, g, h1, std::move(frobenius), std::move(pairing)};
  if (g == 0) {
    c.frobenius = MatrixQ(0, 0);
    c.pairing = MatrixQ(0, 0);
  } else if (g == 1) {
    if (!c.frobenius) {
      Rational a1 = h1[1], a2 = h1[2];
      MatrixQ f(2, 2);
      if (a1 * a1 == 4 * a2) {
        f << -a1 / 2, 0, 0, -a1 / 2;
      } else {
        f << 0, -a2, 1, -a1;
      }
      c.frobenius = f;
    }
    if (!c.pairing) {
      MatrixQ j(2, 2);
      j << 0, 1, -1, 0;
      c.pairing = j;
    }
  }
  validate_curve(c);
  return c;
}

CurveData canonical_curve(int which) {
  if (which == 0) return make_curve(2, 0, UPolyQ{Rational(1)});
  if (which == 1) return make_curve(4, 1, UPolyQ{Rational(1), Rational(-4), Rational(4)});
  throw PreconditionError("canonical curve index must be 0 or 1");
}

bool weil_bound_holds(const CurveData& c, double tolerance) {
  if (c.g == 0) return true;
  const int n = 2 * c.g;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  // Roots alpha of t^{2g} P(1/t) are the Frobenius eigenvalues.
  double lead = to_double(c.h1[0]);
  for (int k = 0; k < n; ++k) companion(0, k) = -to_double(c.h1[k + 1]) / lead;
  for (int k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
  const double target = std::sqrt(to_double(c.q));
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(std::abs(solver.eigenvalues()(k)) - target) > tolerance * std::max(1.0, target)) return false;
  }
  return true;
}

RationalFunction LSeries::rational_function() const {
  UPolyQ base = denominator * one_minus(1).pow(pole_one) * one_minus(q).pow(pole_q);
  return RationalFunction(numerator, base, 1);
}

RationalFunction LSeries::shifted(int d, bool starred) const {
  Rational c = power(q, -d);
  if (denominator(c) == 0) throw PreconditionError("L-series denominator vanishes at the evaluation point");
  UPolyQ base = substitute_upoly(denominator, c, 1);
  const bool drop_one = starred && d == 0;
  const bool drop_q = starred && d == 1;
  if (!drop_one) base = base * one_minus(c).pow(pole_one);
  if (!drop_q) base = base * one_minus(q * c).pow(pole_q);
  return RationalFunction(substitute_upoly(numerator, c, 1), base, 1);
}

LSeries zeta_curve(const CurveData& c) {
  validate_curve(c);
  return LSeries{c.q, c.h1, UPolyQ{Rational(1)}, 1, 1};
}

RationalFunction theta_derivative(const LSeries& l, int k) { return l.rational_function().theta(k); }

Rational log_derivative_at(const LSeries& l, int d) {
  Rational t = power(l.q, -d);
  Rational n = l.numerator(t), e = l.denominator(t);
  if (n == 0) throw PreconditionError("log derivative at a zero");
  if (e == 0 || (l.pole_one > 0 && t == 1) || (l.pole_q > 0 && l.q * t == 1)) {
    throw PreconditionError("log derivative at a pole");
  }
  Rational out = t * l.numerator.derivative()(t) / n - t * l.denominator.derivative()(t) / e;
  out += Rational(l.pole_one) * t / (1 - t);
  out += Rational(l.pole_q) * l.q * t / (1 - l.q * t);
  return out;
}

Rational log_derivative_trace(const CurveData& c, int d) {
  Rational qd = power(c.q, d);
  Rational out = Rational(1) / (qd - 1) + Rational(1) / (qd / c.q - 1);
  if (c.g > 0) {
    if (!c.frobenius) throw PreconditionError("trace route needs the H^1 Frobenius matrix");
    const Eigen::Index n = 2 * c.g;
    MatrixQ m = qd * inverse(*c.frobenius) - MatrixQ::Identity(n, n);
    out -= inverse(m).trace();
  }
  return out;
}

Rational apply_leg_operators(const CurveData& curve, const GrossMotive& motive, const std::vector<LegOperator>& legs) {
  LSeries z = zeta_curve(curve);
  std::vector<RationalFunction> factors;
  for (int d : motive.degrees) {
    if (d < 1) throw PreconditionError("motive line of degree < 1");
    factors.push_back(z.shifted(d, d == 1));
  }
  return apply_leg_operators(factors, legs);
}

Rational apply_leg_operators(const std::vector<RationalFunction>& factors, const std::vector<LegOperator>& legs) {
  const int n = static_cast<int>(factors.size());
  if (n > Monomial::kMaxVariables) throw PreconditionError("too many motive lines");
  Poly op = Poly::constant(n, 1);
  for (const auto& leg : legs) {
    if (static_cast<int>(leg.eps.size()) != n) throw PreconditionError("eigenvalue vector has the wrong length");
    Poly p = Poly::constant(n, leg.c);
    for (int i = 0; i < n; ++i) p.add_term(Monomial::variable(i), leg.eps[static_cast<std::size_t>(i)]);
    op *= p;
  }
  std::map<std::pair<int, int>, Rational> cache;
  auto value = [&](int i, int k) -> const Rational& {
    auto key = std::make_pair(i, k);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, factors[static_cast<std::size_t>(i)].theta(k)(Rational(1))).first;
    return it->second;
  };
  Rational total(0);
  for (const auto& [m, c] : op.terms()) {
    Rational term = c;
    for (int i = 0; i < n; ++i) term *= value(i, m.exponent(i));
    total += term;
  }
  return total;
}

LSeries ArtinLSystem::l_series(std::size_t rho) const {
  const auto& r = reps.at(rho);
  LSeries l{q, r.numerator, UPolyQ{Rational(1)}, 0, 0};
  if (rho == 0) {
    l.pole_one = 1;
    l.pole_q = 1;
  }
  return l;
}

Rational ArtinLSystem::log_derivative(std::size_t rho, int d) const { return log_derivative_at(l_series(rho), d); }

Rational ArtinLSystem::log_derivative(const std::vector<Rational>& coefficients, int d) const {
  Rational s(0);
  for (std::size_t r = 0; r < reps.size(); ++r) {
    if (coefficients.at(r) != 0) s += coefficients[r] * log_derivative(r, d);
  }
  return s;
}

UPolyQ ArtinLSystem::product_numerator() const {
  UPolyQ p{Rational(1)};
  for (const auto& r : reps) p = p * r.numerator.pow(r.dim);
  return p;
}

std::optional<int> functional_equation_sign(const UPolyQ& p, const Rational& q) {
  const int D = p.degree();
  if (D < 0 || p[0] != 1) return std::nullopt;
  if (D % 2 != 0) return std::nullopt;
  for (int sign : {1, -1}) {
    bool ok = true;
    for (int k = 0; k <= D && ok; ++k) {
      ok = p[k] * power(q, D / 2 - k) == Rational(sign) * p[D - k];
    }
    if (ok) return sign;
  }
  return std::nullopt;
}

ArtinLSystem build_artin_system(const std::string& group, int gY, const Rational& q, std::vector<ArtinRep> reps) {
  if (reps.empty() || reps[0].dim != 1) throw PreconditionError("the first representation must be the trivial one");
  if (gY < 0) throw PreconditionError("g_Y must be non-negative");
  for (std::size_t r = 0; r < reps.size(); ++r) {
    const auto& rep = reps[r];
    if (rep.dim < 1) throw PreconditionError("representation dimension must be positive");
    const int expected = r == 0 ? 2 * gY : (2 * gY - 2) * rep.dim;
    if (expected < 0 || rep.numerator.degree() != expected) {
      throw PreconditionError("L-function numerator of " + rep.name + " has the wrong degree");
    }
    auto eps = functional_equation_sign(rep.numerator, q);
    if (!eps || (r == 0 && *eps != 1)) {
      throw PreconditionError("L-function numerator of " + rep.name + " violates the functional equation");
    }
  }
  return ArtinLSystem{group, gY, q, std::move(reps)};
}

}  // namespace shtvol
