#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace multcert {

// Minimal dense square-capable matrix, row major.
template <class C>
struct MatrixT {
  int rows = 0;
  int cols = 0;
  std::vector<C> a;

  MatrixT() = default;
  MatrixT(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, C(0)) {}

  C& at(int r, int c) { return a[std::size_t(r) * cols + c]; }
  const C& at(int r, int c) const { return a[std::size_t(r) * cols + c]; }

  MatrixT top_left(int k) const {
    MatrixT m(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) m.at(r, c) = at(r, c);
    return m;
  }
};

using Matrix = MatrixT<cdouble>;

// Determinant by LU with partial pivoting. Exact zero pivot short-circuits
// to zero; otherwise the usual product of pivots with the permutation sign.
template <class C>
C lu_det(MatrixT<C> m) {
  using T = cx_traits<C>;
  const int k = m.rows;
  C det(1);
  for (int col = 0; col < k; ++col) {
    int pivot = col;
    auto best = T::abs(m.at(col, col));
    for (int r = col + 1; r < k; ++r) {
      auto mag = T::abs(m.at(r, col));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (!(best > 0)) return C(0);
    if (pivot != col) {
      for (int c = col; c < k; ++c) std::swap(m.at(pivot, c), m.at(col, c));
      det = -det;
    }
    det *= m.at(col, col);
    for (int r = col + 1; r < k; ++r) {
      C f = m.at(r, col) / m.at(col, col);
      for (int c = col + 1; c < k; ++c) m.at(r, c) -= f * m.at(col, c);
    }
  }
  return det;
}

// Nondegeneracy floor scaled by the Hadamard bound of the matrix:
// 1e-10 * prod_rows max(1, ||row||_2). Equals 1e-10 on any identity block.
template <class C>
real_of<C> hadamard_floor(const MatrixT<C>& m) {
  using std::sqrt;
  using T = cx_traits<C>;
  using R = real_of<C>;
  R prod(1);
  for (int r = 0; r < m.rows; ++r) {
    R s(0);
    for (int c = 0; c < m.cols; ++c) {
      R mag = T::abs(m.at(r, c));
      s += mag * mag;
    }
    R norm = sqrt(s);
    if (norm > R(1)) prod *= norm;
  }
  return R(1e-10) * prod;
}

}  // namespace multcert
