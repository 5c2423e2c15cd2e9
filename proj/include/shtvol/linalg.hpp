// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026, shtvol contributors.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "shtvol/rational.hpp"

namespace shtvol {

template <typename Scalar>
struct Echelon {
  Matrix<Scalar> reduced;
  std::vector<Eigen::Index> pivots;
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

// Reduced row echelon form by exact Gauss-Jordan elimination.
template <typename Derived>
Echelon<typename Derived::Scalar> row_echelon(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Echelon<Scalar> out;
  out.reduced = input;
  Matrix<Scalar>& m = out.reduced;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::Index row = 0;
  Scalar factor;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index pivot = row;
    while (pivot < rows && m(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index c = col; c < cols; ++c) {
      if (m(row, c) != 0) m(row, c) *= inv;
    }
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == row || m(r, col) == 0) continue;
      factor = m(r, col);
      for (Eigen::Index c = col; c < cols; ++c) {
        if (m(row, c) != 0) m(r, c) -= factor * m(row, c);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
  return row_echelon(m).rank();
}

// Basis of the right kernel, one vector per column.
template <typename Derived>
Matrix<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  auto ech = row_echelon(m);
  const Eigen::Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Matrix<Scalar> basis(cols, cols - ech.rank());
  basis.setZero();
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = 1;
    for (Eigen::Index i = 0; i < ech.rank(); ++i) {
      basis(ech.pivots[static_cast<std::size_t>(i)], k) = -ech.reduced(i, free);
    }
    ++k;
  }
  return basis;
}

// Some solution of a x = b, or nothing when the system is inconsistent.
template <typename DerivedA, typename DerivedB>
std::optional<Vector<typename DerivedA::Scalar>> solve(const Eigen::MatrixBase<DerivedA>& a,
                                                       const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Matrix<Scalar> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  auto ech = row_echelon(aug);
  if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) return std::nullopt;
  Vector<Scalar> x = Vector<Scalar>::Zero(a.cols());
  for (Eigen::Index i = 0; i < ech.rank(); ++i) {
    x(ech.pivots[static_cast<std::size_t>(i)]) = ech.reduced(i, a.cols());
  }
  return x;
}

template <typename Derived>
Matrix<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw PreconditionError("inverse of a non-square matrix");
  const Eigen::Index n = m.rows();
  Matrix<Scalar> aug(n, 2 * n);
  aug << m, Matrix<Scalar>::Identity(n, n);
  auto ech = row_echelon(aug);
  if (ech.rank() < n || (n > 0 && ech.pivots[static_cast<std::size_t>(n - 1)] != n - 1)) {
    throw PreconditionError("matrix is singular");
  }
  return ech.reduced.rightCols(n);
}

template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> m = input;
  const Eigen::Index n = m.rows();
  Scalar det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) return Scalar(0);
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      Scalar factor = m(r, col) / m(col, col);
      for (Eigen::Index c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
    }
  }
  return det;
}

// Coefficients of det(t I - m), constant term first, by Faddeev-LeVerrier.
template <typename Derived>
std::vector<typename Derived::Scalar> characteristic_polynomial(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m.rows();
  std::vector<Scalar> coeffs(static_cast<std::size_t>(n + 1));
  coeffs[static_cast<std::size_t>(n)] = 1;
  Matrix<Scalar> a = m;
  Matrix<Scalar> mk = Matrix<Scalar>::Zero(n, n);
  Scalar c(1);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = a * mk;
    for (Eigen::Index i = 0; i < n; ++i) mk(i, i) += c;
    Matrix<Scalar> amk = a * mk;
    c = -Scalar(amk.trace()) / Scalar(k);
    coeffs[static_cast<std::size_t>(n - k)] = c;
  }
  return coeffs;
}

// Rational roots with multiplicity of a polynomial given constant term first.
std::vector<Rational> rational_roots(std::vector<Rational> coeffs);

}  // namespace shtvol
