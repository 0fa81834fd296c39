#pragma once

// Exact dense linear algebra over a field scalar (Rational in practice).
// No pivoting heuristics: any non-zero pivot is exact.

#include "hamgeom/scalar.hpp"

#include <stdexcept>
#include <vector>

namespace hamgeom::exact {

template <class Scalar>
struct Echelon {
  Matrix<Scalar> reduced;               // reduced row echelon form
  std::vector<Eigen::Index> pivots;     // pivot column of each non-zero row
};

template <class Scalar>
Echelon<Scalar> rref(Matrix<Scalar> m) {
  Echelon<Scalar> out;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Scalar inv = Scalar(1) / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Scalar f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <class Scalar>
Eigen::Index rank(const Matrix<Scalar>& m) {
  return static_cast<Eigen::Index>(rref(m).pivots.size());
}

/// Basis of {x : m x = 0}, one basis vector per column of the result.
template <class Scalar>
Matrix<Scalar> kernel(const Matrix<Scalar>& m) {
  const auto e = rref(m);
  const Eigen::Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < cols; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);

  Matrix<Scalar> basis = Matrix<Scalar>::Zero(cols, static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    const Eigen::Index f = free[k];
    basis(f, static_cast<Eigen::Index>(k)) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      basis(e.pivots[r], static_cast<Eigen::Index>(k)) =
          -e.reduced(static_cast<Eigen::Index>(r), f);
  }
  return basis;
}

template <class Scalar>
Scalar determinant(Matrix<Scalar> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const Eigen::Index n = m.rows();
  Scalar det(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return Scalar(0);
    if (p != c) {
      m.row(p).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Scalar f = m(i, c) / m(c, c);
      for (Eigen::Index j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Throws std::domain_error when m is singular.
template <class Scalar>
Matrix<Scalar> inverse(const Matrix<Scalar>& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  Matrix<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Matrix<Scalar>::Identity(n, n);
  auto e = rref(std::move(aug));
  if (static_cast<Eigen::Index>(e.pivots.size()) < n || e.pivots[static_cast<std::size_t>(n - 1)] != n - 1)
    throw std::domain_error("matrix is singular");
  return e.reduced.rightCols(n);
}

template <class Scalar>
bool is_zero(const Matrix<Scalar>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

}  // namespace hamgeom::exact
