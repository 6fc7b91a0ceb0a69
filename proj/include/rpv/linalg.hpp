#pragma once

// Exact dense linear algebra over Q(i).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rpv/rational.hpp"

namespace rpv {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<GaussRat>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& r : init) {
      if (r.size() != cols_) throw Error("ragged matrix literal");
      for (const auto& v : r) a_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = GaussRat(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  GaussRat& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const GaussRat& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw Error("matrix shape mismatch");
    Matrix z(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i) {
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) z(i, j) += x(i, k) * y(k, j);
      }
    }
    return z;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    for (std::size_t k = 0; k < x.a_.size(); ++k) x.a_[k] += y.a_.at(k);
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    for (std::size_t k = 0; k < x.a_.size(); ++k) x.a_[k] -= y.a_.at(k);
    return x;
  }
  Matrix scaled(const GaussRat& s) const {
    Matrix m(*this);
    for (auto& v : m.a_) v *= s;
    return m;
  }

  Matrix conj() const {
    Matrix m(*this);
    for (auto& v : m.a_) v = v.conj();
    return m;
  }
  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    }
    return m;
  }
  bool is_real() const {
    for (const auto& v : a_) {
      if (!v.is_real()) return false;
    }
    return true;
  }
  bool is_identity() const { return is_square() && *this == identity(rows_); }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  // Row-reduced echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && (*this)(p, c).is_zero()) ++p;
      if (p == rows_) continue;
      swap_rows(p, r);
      GaussRat inv = (*this)(r, c).inverse();
      for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, c).is_zero()) continue;
        GaussRat f = (*this)(i, c);
        for (std::size_t j = c; j < cols_; ++j) {
          if (!(*this)(r, j).is_zero()) (*this)(i, j) -= f * (*this)(r, j);
        }
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix m(*this);
    return m.rref().size();
  }

  // Basis of {x : A x = 0}, one vector per free column, in column order.
  std::vector<std::vector<GaussRat>> kernel() const {
    Matrix m(*this);
    auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<GaussRat>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<GaussRat> v(cols_);
      v[f] = GaussRat(1);
      for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, f);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  // Some solution of A x = b, if the system is consistent.
  std::optional<std::vector<GaussRat>> solve(const std::vector<GaussRat>& b) const {
    Matrix aug(rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_) = b.at(i);
    }
    auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    std::vector<GaussRat> x(cols_);
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, cols_);
    return x;
  }

  GaussRat determinant() const {
    if (!is_square()) throw Error("determinant of a non-square matrix");
    Matrix m(*this);
    GaussRat det(1);
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t p = c;
      while (p < rows_ && m(p, c).is_zero()) ++p;
      if (p == rows_) return GaussRat(0);
      if (p != c) {
        m.swap_rows(p, c);
        det = -det;
      }
      det *= m(c, c);
      GaussRat inv = m(c, c).inverse();
      for (std::size_t i = c + 1; i < rows_; ++i) {
        if (m(i, c).is_zero()) continue;
        GaussRat f = m(i, c) * inv;
        for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(c, j);
      }
    }
    return det;
  }

  std::optional<Matrix> inverse() const {
    if (!is_square()) return std::nullopt;
    std::size_t n = rows_;
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = GaussRat(1);
    }
    auto pivots = aug.rref();
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    }
    return inv;
  }

  // Rows joined as "[[a, b], [c, d]]" in canonical coefficient text.
  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
      s += "]";
    }
    return s + "]";
  }

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussRat> a_;
};

}  // namespace rpv
