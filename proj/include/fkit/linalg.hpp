#pragma once

// Exact Gaussian elimination over any field scalar. Eigen's decompositions
// pivot on magnitude, which is meaningless over F_p, so these are used instead.

#include <Eigen/Core>

#include <vector>

#include "fkit/scalar.hpp"

namespace fkit {

template <class S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class Derived>
bool all_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <class A, class B>
bool exactly_equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

/// Reduced row echelon form in place; returns pivot columns.
template <class S>
std::vector<Eigen::Index> row_reduce(MatX<S>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r)
      if (!is_zero(m(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    m.row(row).swap(m.row(piv));
    S inv = S(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      S f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class S>
Eigen::Index rank(MatX<S> m) {
  return static_cast<Eigen::Index>(row_reduce(m).size());
}

/// Columns span the null space {x : m x = 0}.
template <class S>
MatX<S> kernel_basis(MatX<S> m, const S& one) {
  auto pivots = row_reduce(m);
  const Eigen::Index n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  MatX<S> k(n, n - static_cast<Eigen::Index>(pivots.size()));
  k.setConstant(one - one);
  Eigen::Index out = 0;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    k(free, out) = one;
    for (std::size_t r = 0; r < pivots.size(); ++r) k(pivots[r], out) = -m(static_cast<Eigen::Index>(r), free);
    ++out;
  }
  return k;
}

template <class S>
S determinant(MatX<S> m, const S& one) {
  const Eigen::Index n = m.rows();
  S det = one;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = col; r < n; ++r)
      if (!is_zero(m(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) return one - one;
    if (piv != col) {
      m.row(col).swap(m.row(piv));
      det = -det;
    }
    det *= m(col, col);
    S inv = S(1) / m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (is_zero(m(r, col))) continue;
      S f = m(r, col) * inv;
      for (Eigen::Index c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

/// Cofactor expansion for fixed 3x3 matrices.
template <class Derived>
typename Derived::Scalar det3(const Eigen::MatrixBase<Derived>& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

}  // namespace fkit
