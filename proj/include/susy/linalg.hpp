#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "susy/rational.hpp"

namespace susy {

/// Row-major dense matrix over an exact field.
template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, F(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  F& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  void append_row(const std::vector<F>& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw DomainError("matrix row length mismatch");
    a_.insert(a_.end(), row.begin(), row.end());
    ++rows_;
  }

  /// In-place reduced row echelon form; returns pivot columns in row order.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && (*this)(p, c) == 0) ++p;
      if (p == rows_) continue;
      if (p != r)
        for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(p, k), (*this)(r, k));
      F inv = F(1) / (*this)(r, c);
      for (std::size_t k = c; k < cols_; ++k) (*this)(r, k) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r) continue;
        F factor = (*this)(i, c);
        if (factor == 0) continue;
        for (std::size_t k = c; k < cols_; ++k) {
          if ((*this)(r, k) != 0) (*this)(i, k) -= factor * (*this)(r, k);
        }
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> a_;
};

template <class F>
std::size_t rank(Matrix<F> m) {
  return m.rref().size();
}

/// Basis of {v : m v = 0}. Each basis vector has a 1 at one free column and zeros at
/// the other free columns, so unconstrained coordinates come back as unit vectors.
template <class F>
std::vector<std::vector<F>> kernel(Matrix<F> m, std::size_t ncols) {
  if (m.rows() == 0) {
    std::vector<std::vector<F>> basis;
    for (std::size_t j = 0; j < ncols; ++j) {
      std::vector<F> v(ncols, F(0));
      v[j] = 1;
      basis.push_back(std::move(v));
    }
    return basis;
  }
  auto pivots = m.rref();
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t j = 0; j < ncols; ++j) {
    if (is_pivot[j]) continue;
    std::vector<F> v(ncols, F(0));
    v[j] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Rank of the projection of a set of vectors onto the coordinates [begin, end).
template <class F>
std::size_t projected_rank(const std::vector<std::vector<F>>& vectors, std::size_t begin, std::size_t end) {
  Matrix<F> m;
  for (const auto& v : vectors) m.append_row(std::vector<F>(v.begin() + begin, v.begin() + end));
  if (m.rows() == 0) return 0;
  return rank(std::move(m));
}

}  // namespace susy
