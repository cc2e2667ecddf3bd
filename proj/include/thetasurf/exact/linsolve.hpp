#ifndef THETASURF_EXACT_LINSOLVE_HPP
#define THETASURF_EXACT_LINSOLVE_HPP

#include <vector>

#include "qnum.hpp"

namespace thetasurf {

using QMatrix = std::vector<std::vector<QNum>>;

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(QMatrix& a) {
  std::vector<int> piv;
  if (a.empty()) return piv;
  int rows = (int)a.size(), cols = (int)a[0].size(), r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    QNum inv = QNum(1) / a[r][c];
    for (int j = c; j < cols; ++j) a[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      QNum f = a[i][c];
      for (int j = c; j < cols; ++j)
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

// Basis of {v : a v = 0}.
inline std::vector<std::vector<QNum>> nullspace(QMatrix a, int cols) {
  auto piv = rref(a);
  std::vector<bool> is_piv(cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<QNum>> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<QNum> v(cols, QNum(0));
    v[f] = QNum(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace thetasurf

#endif
