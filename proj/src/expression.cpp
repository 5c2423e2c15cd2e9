// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#include "shtvol/expression.hpp"

#include <cctype>
#include <string>

namespace shtvol {

namespace {

class Parser {
 public:
  Parser(std::string_view text, int nvars) : text_(text), nvars_(nvars) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SchemaError("polynomial expression: " + what + " at offset " + std::to_string(pos_) + " in '" +
                      std::string(text_) + "'");
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  Poly expr() {
    Poly p = term();
    while (true) {
      if (accept('+')) {
        p += term();
      } else if (accept('-')) {
        p -= term();
      } else {
        return p;
      }
    }
  }
  Poly term() {
    Poly p = unary();
    while (true) {
      if (accept('*')) {
        p *= unary();
      } else if (accept('/')) {
        Poly d = unary();
        if (d.degree() > 0 || d.is_zero()) fail("division by a non-constant or zero");
        p *= Rational(1) / d.constant_term();
      } else {
        return p;
      }
    }
  }
  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  Poly power() {
    Poly base = atom();
    if (accept('^')) {
      std::string e = digits();
      if (e.size() > 3) fail("exponent too large");
      return base.pow(std::stoi(e));
    }
    return base;
  }
  Poly atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (c == 'x') {
      ++pos_;
      std::string idx = digits();
      if (idx.size() > 2) fail("variable index too large");
      int k = std::stoi(idx);
      if (k < 1 || k > nvars_) fail("variable x" + idx + " out of range");
      return Poly::variable(nvars_, k - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Poly::constant(nvars_, Rational(Integer(digits(), 10)));
    }
    fail("unexpected character");
  }

  std::string_view text_;
  int nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_polynomial(std::string_view text, int nvars) { return Parser(text, nvars).parse(); }

}  // namespace shtvol
