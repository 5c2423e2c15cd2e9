// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "shtvol/rational.hpp"

namespace shtvol {

// Exponent vector of up to eight variables packed into one word, one byte per
// variable, variable 0 in the most significant byte. Integer order on the packed
// word is the lexicographic order with x1 > x2 > ... .
class Monomial {
 public:
  static constexpr int kMaxVariables = 8;
  static constexpr int kMaxExponent = 127;

  constexpr Monomial() = default;
  static Monomial from_exponents(std::span<const int> exponents);
  static Monomial variable(int k, int exponent = 1);

  int exponent(int k) const { return static_cast<int>((bits_ >> shift(k)) & 0xffu); }
  int degree() const;
  std::vector<int> exponents(int nvars) const;
  Monomial with_exponent(int k, int exponent) const;
  bool divides(const Monomial& other) const;

  std::uint64_t bits() const { return bits_; }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  explicit constexpr Monomial(std::uint64_t bits) : bits_(bits) {}
  static constexpr int shift(int k) { return 8 * (kMaxVariables - 1 - k); }
  std::uint64_t bits_ = 0;
};

// Sparse multivariate polynomial with exact coefficients. Terms are kept in
// descending lexicographic order so the leading term is the first entry.
template <typename Scalar>
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Scalar, std::greater<Monomial>>;

  explicit Polynomial(int nvars = 0) : nvars_(nvars) { check_nvars(); }

  static Polynomial constant(int nvars, const Scalar& c) {
    Polynomial p(nvars);
    p.add_term(Monomial(), c);
    return p;
  }
  static Polynomial variable(int nvars, int k) {
    Polynomial p(nvars);
    p.add_term(Monomial::variable(k), Scalar(1));
    return p;
  }
  static Polynomial monomial(int nvars, const Monomial& m, const Scalar& c = Scalar(1)) {
    Polynomial p(nvars);
    p.add_term(m, c);
    return p;
  }
  // sum_k coeffs[k] x_k
  template <typename Derived>
  static Polynomial linear_form(const Eigen::MatrixBase<Derived>& coeffs) {
    Polynomial p(static_cast<int>(coeffs.size()));
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
      p.add_term(Monomial::variable(static_cast<int>(k)), Scalar(coeffs(k)));
    }
    return p;
  }

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Total polynomial degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }
  bool is_homogeneous() const {
    int d = -2;
    for (const auto& [m, c] : terms_) {
      if (d == -2) d = m.degree();
      if (m.degree() != d) return false;
    }
    return true;
  }
  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }
  Scalar constant_term() const { return coefficient(Monomial()); }

  void add_term(const Monomial& m, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& other) {
    check_same(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& other) {
    check_same(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Scalar& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  Polynomial& operator*=(const Polynomial& other) { return *this = *this * other; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Scalar(-1); }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    Polynomial out(a.nvars_);
    Scalar prod;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        prod = ca * cb;
        out.add_term(ma * mb, prod);
      }
    }
    return out;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Polynomial pow(int k) const {
    Polynomial result = constant(nvars_, Scalar(1));
    Polynomial base = *this;
    while (k > 0) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    return result;
  }

  Polynomial derivative(int k) const {
    Polynomial out(nvars_);
    for (const auto& [m, c] : terms_) {
      int e = m.exponent(k);
      if (e == 0) continue;
      out.add_term(m.with_exponent(k, e - 1), c * Scalar(e));
    }
    return out;
  }

  Polynomial homogeneous_component(int deg) const {
    Polynomial out(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m.degree() == deg) out.terms_.emplace(m, c);
    }
    return out;
  }

  Scalar evaluate(std::span<const Scalar> point) const {
    Scalar total(0);
    std::vector<std::vector<Scalar>> powers(static_cast<std::size_t>(nvars_));
    for (const auto& [m, c] : terms_) {
      Scalar term = c;
      for (int k = 0; k < nvars_; ++k) {
        int e = m.exponent(k);
        if (e == 0) continue;
        auto& pk = powers[static_cast<std::size_t>(k)];
        if (pk.empty()) pk.push_back(Scalar(1));
        while (static_cast<int>(pk.size()) <= e) pk.push_back(pk.back() * point[static_cast<std::size_t>(k)]);
        term *= pk[static_cast<std::size_t>(e)];
      }
      total += term;
    }
    return total;
  }

  // Substitute x_k -> images[k] for every variable.
  Polynomial compose(std::span<const Polynomial> images) const {
    if (static_cast<int>(images.size()) != nvars_) throw PreconditionError("compose: wrong image count");
    int out_vars = images.empty() ? 0 : images[0].nvars();
    Polynomial out(out_vars);
    std::vector<std::vector<Polynomial>> powers(static_cast<std::size_t>(nvars_));
    for (const auto& [m, c] : terms_) {
      Polynomial term = constant(out_vars, c);
      for (int k = 0; k < nvars_; ++k) {
        int e = m.exponent(k);
        if (e == 0) continue;
        auto& pk = powers[static_cast<std::size_t>(k)];
        if (pk.empty()) pk.push_back(constant(out_vars, Scalar(1)));
        while (static_cast<int>(pk.size()) <= e) pk.push_back(pk.back() * images[static_cast<std::size_t>(k)]);
        term *= pk[static_cast<std::size_t>(e)];
      }
      out += term;
    }
    return out;
  }

  // Exact quotient by a nonzero linear form under lexicographic division.
  // Returns false (leaving quotient partial) when the remainder is nonzero.
  bool divide_exact(const Polynomial& divisor, Polynomial& quotient) const {
    check_same(divisor);
    if (divisor.is_zero()) throw PreconditionError("division by zero polynomial");
    const auto& [lead_m, lead_c] = *divisor.terms_.begin();
    quotient = Polynomial(nvars_);
    Polynomial rest = *this;
    while (!rest.is_zero()) {
      auto [m, c] = *rest.terms_.begin();
      if (!lead_m.divides(m)) return false;
      Monomial qm = m / lead_m;
      Scalar qc = c / lead_c;
      quotient.terms_.emplace(qm, qc);
      for (const auto& [dm, dc] : divisor.terms_) rest.add_term(qm * dm, -(qc * dc));
    }
    return true;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  void check_nvars() const {
    if (nvars_ < 0 || nvars_ > Monomial::kMaxVariables) {
      throw PreconditionError("polynomial variable count out of range");
    }
  }
  void check_same(const Polynomial& other) const {
    if (other.nvars_ != nvars_) throw PreconditionError("polynomial variable count mismatch");
  }

  int nvars_;
  TermMap terms_;
};

using Poly = Polynomial<Rational>;

std::string scalar_to_string(const Rational& x);

template <typename Scalar>
std::string Polynomial<Scalar>::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Scalar mag = c < 0 ? Scalar(-c) : c;
    out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    first = false;
    std::string mono;
    for (int k = 0; k < nvars_; ++k) {
      int e = m.exponent(k);
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.empty() ? "x" + std::to_string(k + 1) : names[static_cast<std::size_t>(k)];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += scalar_to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += scalar_to_string(mag) + "*" + mono;
    }
  }
  return out;
}

// Dense univariate polynomial, constant coefficient first.
template <typename Scalar>
class UPoly {
 public:
  UPoly() = default;
  UPoly(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }
  explicit UPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UPoly monomial(int k, const Scalar& c = Scalar(1)) {
    std::vector<Scalar> v(static_cast<std::size_t>(k + 1));
    v[static_cast<std::size_t>(k)] = c;
    return UPoly(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Scalar operator[](int k) const {
    return (k < 0 || k > degree()) ? Scalar(0) : c_[static_cast<std::size_t>(k)];
  }
  const std::vector<Scalar>& coefficients() const { return c_; }

  Scalar operator()(const Scalar& x) const {
    Scalar acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Scalar> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
    return UPoly(std::move(v));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + b * Scalar(-1); }
  friend UPoly operator*(const UPoly& a, const Scalar& s) {
    std::vector<Scalar> v = a.c_;
    for (auto& x : v) x *= s;
    return UPoly(std::move(v));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<Scalar> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(v));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  UPoly pow(int k) const {
    UPoly r{Scalar(1)};
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }
  UPoly derivative() const {
    std::vector<Scalar> v;
    for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * Scalar(static_cast<long>(i)));
    return UPoly(std::move(v));
  }
  // t d/dt
  UPoly theta() const {
    std::vector<Scalar> v = c_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= Scalar(static_cast<long>(i));
    return UPoly(std::move(v));
  }
  // p(a t)
  UPoly scale_argument(const Scalar& a) const {
    std::vector<Scalar> v = c_;
    Scalar pw(1);
    for (auto& x : v) {
      x *= pw;
      pw *= a;
    }
    return UPoly(std::move(v));
  }
  // Quotient and remainder by a nonzero divisor.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw PreconditionError("polynomial division by zero");
    std::vector<Scalar> r = c_;
    int dq = degree() - d.degree();
    if (dq < 0) return {UPoly(), *this};
    std::vector<Scalar> q(static_cast<std::size_t>(dq + 1));
    for (int i = dq; i >= 0; --i) {
      Scalar coef = r[static_cast<std::size_t>(i + d.degree())] / d.c_.back();
      q[static_cast<std::size_t>(i)] = coef;
      for (int j = 0; j <= d.degree(); ++j) r[static_cast<std::size_t>(i + j)] -= coef * d.c_[static_cast<std::size_t>(j)];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Scalar> c_;
};

using UPolyQ = UPoly<Rational>;

}  // namespace shtvol
