#pragma once

#include <vector>

#include "primage/error.hpp"
#include "primage/rational.hpp"

namespace primage {

using QMat = std::vector<std::vector<Rat>>;

// In-place Gauss-Jordan reduction; returns the rank. Rows may be empty only
// when the whole matrix is empty.
inline int qmat_rref(QMat& A, std::vector<int>* pivot_cols = nullptr) {
  if (pivot_cols) pivot_cols->clear();
  if (A.empty()) return 0;
  const int rows = static_cast<int>(A.size());
  const int cols = static_cast<int>(A[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!A[i][c].is_zero()) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(A[r], A[piv]);
    Rat inv = A[r][c].inv();
    for (int j = c; j < cols; ++j) A[r][j] = A[r][j] * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || A[i][c].is_zero()) continue;
      Rat m = A[i][c];
      for (int j = c; j < cols; ++j) A[i][j] = A[i][j] - m * A[r][j];
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++r;
  }
  return r;
}

// Basis of the right kernel {x : A x = 0}; ncols is required because A may
// have zero rows.
inline std::vector<std::vector<Rat>> qmat_kernel(QMat A, int ncols) {
  std::vector<int> piv;
  int rank = qmat_rref(A, &piv);
  std::vector<bool> is_piv(ncols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (int c = 0; c < ncols; ++c) {
    if (is_piv[c]) continue;
    std::vector<Rat> x(ncols, Rat(0));
    x[c] = Rat(1);
    for (int i = 0; i < rank; ++i) x[piv[i]] = -A[i][c];
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace primage
