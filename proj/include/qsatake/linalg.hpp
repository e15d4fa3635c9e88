#pragma once

// Dense exact linear algebra over Q(q), sized for graded pieces of small
// polynomial rings. Deterministic: pivoting always picks the first nonzero
// entry in column order.

#include "qsatake/qarith.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qsatake {

using QVec = std::vector<QRational>;
using QMat = std::vector<QVec>;  // row major

// Reduced row echelon form in place; returns pivot column per pivot row.
inline std::vector<int> rref(QMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(m[r], m[sel]);
    QRational inv = m[r][c].inverse();
    for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      QRational f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  m.resize(r);  // drop zero rows
  return pivots;
}

// Basis of the right kernel, one vector per free column, in column order.
inline QMat kernel_basis(QMat m, size_t cols) {
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
  QMat basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVec v(cols, QRational(0));
    v[free] = QRational(1);
    for (size_t i = 0; i < pivots.size(); ++i) {
      size_t pc = static_cast<size_t>(pivots[i]);
      v[pc] = -m[i][free];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solve A x = b for one solution; nullopt if inconsistent.
inline std::optional<QVec> solve(QMat a, const QVec& b) {
  size_t rows = a.size();
  size_t cols = rows == 0 ? 0 : a[0].size();
  for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  std::vector<int> pivots = rref(a);
  QVec x(cols, QRational(0));
  for (size_t i = 0; i < pivots.size(); ++i) {
    if (static_cast<size_t>(pivots[i]) == cols) return std::nullopt;
    x[static_cast<size_t>(pivots[i])] = a[i][cols];
  }
  return x;
}

// Rank of a matrix (destructive copy).
inline size_t rank_of(QMat m) { return rref(m).size(); }

}  // namespace qsatake
