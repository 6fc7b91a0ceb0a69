#pragma once

// Wronskian matrices and linear independence over the constants.

#include <vector>

#include "rpv/tower.hpp"

namespace rpv {

// Row k holds the k-th derivatives of the inputs.
using WrMatrix = std::vector<std::vector<FieldElement>>;

namespace detail {

inline TowerPtr common_tower(const std::vector<FieldElement>& xs) {
  TowerPtr t = xs.front().tower_data();
  for (const auto& x : xs) t = join_towers(t, x.tower_data());
  return t;
}

}  // namespace detail

inline WrMatrix wronskian_matrix(const std::vector<FieldElement>& ys) {
  if (ys.empty()) throw EmptyInput("wronskian of an empty sequence");
  DiffTower tower(detail::common_tower(ys));
  WrMatrix w;
  std::vector<FieldElement> row;
  for (const auto& y : ys) row.push_back(tower.lift(y));
  for (std::size_t k = 0; k < ys.size(); ++k) {
    if (k > 0) {
      for (auto& y : row) y = derive(y);
    }
    w.push_back(row);
  }
  return w;
}

// Fraction-free Bareiss elimination with row pivoting; every intermediate
// entry is a normalized tower element.
inline FieldElement determinant(WrMatrix m) {
  std::size_t n = m.size();
  if (n == 0) throw EmptyInput("determinant of an empty matrix");
  DiffTower tower(detail::common_tower(m.front()));
  FieldElement prev = tower.one();
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return tower.zero();
      std::swap(m[k], m[p]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

inline FieldElement wronskian_det(const std::vector<FieldElement>& ys) { return determinant(wronskian_matrix(ys)); }

inline bool independent_over_constants(const std::vector<FieldElement>& ys) { return !wronskian_det(ys).is_zero(); }

}  // namespace rpv
