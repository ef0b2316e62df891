#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "susy/grassmann.hpp"

namespace susy {

using GMatrix = std::vector<std::vector<GrassmannElement>>;

namespace detail {

inline GrassmannElement zero_of(const AlgebraPtr& alg) { return GrassmannElement(alg); }

/// Determinant of a square matrix with even (hence mutually commuting) entries.
inline GrassmannElement even_det(const GMatrix& m, const AlgebraPtr& alg) {
  const std::size_t n = m.size();
  if (n == 0) return GrassmannElement(alg, RationalFunction(1));
  if (n == 1) return m[0][0];
  GrassmannElement acc = zero_of(alg);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    GMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<GrassmannElement> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    GrassmannElement term = m[0][j] * even_det(minor, alg);
    acc = (j % 2) ? acc - term : acc + term;
  }
  return acc;
}

inline GrassmannElement cofactor(const GMatrix& m, std::size_t i, std::size_t j, const AlgebraPtr& alg) {
  GMatrix minor;
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (r == i) continue;
    std::vector<GrassmannElement> row;
    for (std::size_t c = 0; c < m.size(); ++c)
      if (c != j) row.push_back(m[r][c]);
    minor.push_back(std::move(row));
  }
  GrassmannElement d = even_det(minor, alg);
  return ((i + j) % 2) ? -d : d;
}

inline GMatrix mat_mul(const GMatrix& a, const GMatrix& b, const AlgebraPtr& alg) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k == 0 ? 0 : b[0].size();
  GMatrix out(n, std::vector<GrassmannElement>(m, zero_of(alg)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < k; ++l) out[i][j] += a[i][l] * b[l][j];
  return out;
}

inline GMatrix mat_sub(GMatrix a, const GMatrix& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= b[i][j];
  return a;
}

}  // namespace detail

/// Even supermatrix [[A, B], [C, D]] of shape (p|q) x (p|q): A, D even entries, B, C odd.
class SuperMatrix {
 public:
  SuperMatrix(AlgebraPtr alg, GMatrix a, GMatrix b, GMatrix c, GMatrix d)
      : alg_(std::move(alg)), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    p_ = a_.size();
    q_ = d_.size();
    auto check = [&](const GMatrix& m, std::size_t rows, std::size_t cols, bool even) {
      if (m.size() != rows) throw InputError("supermatrix block has wrong row count");
      for (const auto& row : m) {
        if (row.size() != cols) throw InputError("supermatrix block has wrong column count");
        for (const auto& e : row)
          if (even ? !e.is_even() : !e.is_odd()) throw InputError("supermatrix block parity violation");
      }
    };
    check(a_, p_, p_, true);
    check(b_, p_, q_, false);
    check(c_, q_, p_, false);
    check(d_, q_, q_, true);
  }

  std::size_t even_size() const { return p_; }
  std::size_t odd_size() const { return q_; }
  const GMatrix& A() const { return a_; }
  const GMatrix& B() const { return b_; }
  const GMatrix& C() const { return c_; }
  const GMatrix& D() const { return d_; }
  const AlgebraPtr& algebra() const { return alg_; }

  friend SuperMatrix operator*(const SuperMatrix& m, const SuperMatrix& n) {
    using detail::mat_mul;
    const auto& al = m.alg_;
    auto add = [](GMatrix x, const GMatrix& y) {
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x[i].size(); ++j) x[i][j] += y[i][j];
      return x;
    };
    return SuperMatrix(al, add(mat_mul(m.a_, n.a_, al), mat_mul(m.b_, n.c_, al)),
                       add(mat_mul(m.a_, n.b_, al), mat_mul(m.b_, n.d_, al)),
                       add(mat_mul(m.c_, n.a_, al), mat_mul(m.d_, n.c_, al)),
                       add(mat_mul(m.c_, n.b_, al), mat_mul(m.d_, n.d_, al)));
  }

 private:
  AlgebraPtr alg_;
  GMatrix a_, b_, c_, d_;
  std::size_t p_ = 0;
  std::size_t q_ = 0;
};

/// Inverse of a square even matrix whose body is invertible (adjugate over the
/// commutative even subalgebra).
inline GMatrix even_inverse(const GMatrix& m, const AlgebraPtr& alg) {
  GrassmannElement det = detail::even_det(m, alg);
  if (det.body().is_zero()) throw DomainError("singular body: matrix not invertible");
  GrassmannElement inv_det = det.inverse();
  const std::size_t n = m.size();
  GMatrix out(n, std::vector<GrassmannElement>(n, GrassmannElement(alg)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = detail::cofactor(m, j, i, alg) * inv_det;
  return out;
}

/// Ber(M) = det(A - B D^{-1} C) det(D)^{-1}.
inline GrassmannElement berezinian(const SuperMatrix& m) {
  const auto& alg = m.algebra();
  GrassmannElement det_d = detail::even_det(m.D(), alg);
  if (det_d.body().is_zero()) throw DomainError("berezinian: D block has singular body");
  GMatrix dinv = even_inverse(m.D(), alg);
  GMatrix schur = detail::mat_sub(m.A(), detail::mat_mul(detail::mat_mul(m.B(), dinv, alg), m.C(), alg));
  return detail::even_det(schur, alg) * det_d.inverse();
}

}  // namespace susy
