#pragma once

// Zero sets of polynomial systems in the matrix indeterminates X_ij,
// restricted to invertible matrices. Inclusion and equality of zero sets are
// decided by radical membership (Rabinowitsch trick) with the extra relation
// d*det(X) = 1 encoding invertibility.

#include <string>
#include <vector>

#include "rpv/groebner.hpp"
#include "rpv/linalg.hpp"

namespace rpv {

// Context X11, X12, ..., Xnn (row-major), one graded-lex block.
inline ContextPtr matrix_context(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) names.push_back("X" + std::to_string(i) + std::to_string(j));
  }
  return VarContext::make(names, 0);
}

inline Poly matrix_entry(const ContextPtr& xctx, std::size_t i, std::size_t j) {
  return poly_var(xctx, "X" + std::to_string(i + 1) + std::to_string(j + 1));
}

inline std::size_t matrix_size(const ContextPtr& xctx) {
  std::size_t n = 0;
  while ((n + 1) * (n + 1) <= xctx->size() && xctx->index_of("X" + std::to_string(n + 1) + std::to_string(n + 1))) ++n;
  return n;
}

// det(X) by cofactor expansion along the first row.
inline Poly generic_determinant(const ContextPtr& xctx, std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
  if (rows.size() == 1) return matrix_entry(xctx, rows[0], cols[0]);
  Poly total(xctx);
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::vector<std::size_t> sub_cols;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c != k) sub_cols.push_back(cols[c]);
    }
    Poly term = matrix_entry(xctx, rows[0], cols[k]) * generic_determinant(xctx, sub_rows, sub_cols);
    total = k % 2 == 0 ? total + term : total - term;
  }
  return total;
}

inline Poly generic_determinant(const ContextPtr& xctx) {
  std::size_t n = matrix_size(xctx);
  std::vector<std::size_t> idx(n);
  for (std::size_t k = 0; k < n; ++k) idx[k] = k;
  return generic_determinant(xctx, idx, idx);
}

// Value of p at the matrix m.
inline GaussRat evaluate_at(const Poly& p, const Matrix& m) {
  const auto& ctx = *p.context();
  std::size_t n = m.rows();
  return p.evaluate(
      GaussRat(1), [](const GaussRat& c) { return c; },
      [&](std::size_t v) {
        const std::string& name = ctx.name(v);
        std::size_t i = static_cast<std::size_t>(name[1] - '1'), j = static_cast<std::size_t>(name[2] - '1');
        if (i >= n || j >= n) throw ContextError("matrix too small for " + name);
        return m(i, j);
      });
}

// Whether f vanishes on every invertible zero of `gens`.
inline bool in_radical_gl(const Poly& f, const std::vector<Poly>& gens, const ContextPtr& xctx,
                          std::size_t budget = kDefaultBuchbergerBudget) {
  auto ctx = xctx->extended({"_d", "_y"}, 0);
  std::vector<Poly> system;
  for (const auto& g : gens) system.push_back(g.lifted(ctx));
  Poly one = poly_const(ctx, GaussRat(1));
  system.push_back(poly_var(ctx, "_d") * generic_determinant(xctx).lifted(ctx) - one);
  system.push_back(one - poly_var(ctx, "_y") * f.lifted(ctx));
  auto rs = buchberger(system, budget);
  return rs.rules().size() == 1 && rs.rules()[0].is_constant();
}

// V(a) within GL(n) is contained in V(b).
inline bool zero_set_contained(const std::vector<Poly>& a, const std::vector<Poly>& b, const ContextPtr& xctx) {
  for (const auto& p : b) {
    if (!in_radical_gl(p, a, xctx)) return false;
  }
  return true;
}

inline bool same_zero_set(const std::vector<Poly>& a, const std::vector<Poly>& b, const ContextPtr& xctx) {
  return zero_set_contained(a, b, xctx) && zero_set_contained(b, a, xctx);
}

// Generators of an ideal whose zero set is the given finite set of matrices:
// the product of the maximal ideals of the points.
inline std::vector<Poly> points_ideal(const std::vector<Matrix>& points, const ContextPtr& xctx) {
  std::size_t n = matrix_size(xctx);
  std::vector<Poly> current{poly_const(xctx, GaussRat(1))};
  for (const auto& m : points) {
    std::vector<Poly> next;
    for (const auto& p : current) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          next.push_back(p * (matrix_entry(xctx, i, j) - poly_const(xctx, m(i, j))));
        }
      }
    }
    // Keep the generating set small by passing through a Groebner basis.
    current = buchberger(next).rules();
  }
  return current;
}

inline std::vector<Poly> identity_ideal(const ContextPtr& xctx) {
  return points_ideal({Matrix::identity(matrix_size(xctx))}, xctx);
}

}  // namespace rpv
