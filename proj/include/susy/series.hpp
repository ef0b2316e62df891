#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <utility>
#include <vector>

#include "susy/polynomial.hpp"
#include "susy/rational.hpp"

namespace susy {

/// Truncated Laurent series sum_k c_k t^k known modulo t^prec, or exactly (all
/// coefficients beyond the stored ones are zero). Precision is tracked through every
/// operation so that a reported leading term is never an artifact of truncation.
template <class K>
class Series {
 public:
  static constexpr int kExact = INT_MAX / 4;

  Series() = default;

  static Series exact(std::vector<K> coeffs, int start = 0) {
    Series s;
    s.start_ = start;
    s.c_ = std::move(coeffs);
    s.exact_ = true;
    return s;
  }
  static Series constant(const K& c) { return exact({c}); }
  static Series monomial(const K& c, int exponent) { return exact({c}, exponent); }
  static Series variable() { return monomial(K(1), 1); }
  /// Series with known coefficients on [start, prec).
  static Series truncated(std::vector<K> coeffs, int start, int prec) {
    Series s;
    s.start_ = start;
    coeffs.resize(std::max(0, prec - start), K(0));
    s.c_ = std::move(coeffs);
    s.exact_ = false;
    return s;
  }

  bool is_exact() const { return exact_; }
  int start() const { return start_; }
  /// Absolute precision: coefficients below this exponent are known.
  int precision() const { return exact_ ? kExact : start_ + static_cast<int>(c_.size()); }

  K coeff(int k) const {
    if (k < start_) return K(0);
    if (!exact_ && k >= precision()) throw DomainError("series coefficient beyond known precision");
    std::size_t i = static_cast<std::size_t>(k - start_);
    return i < c_.size() ? c_[i] : K(0);
  }

  /// Exponent of the leading nonzero coefficient, if one is known.
  std::optional<int> valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == 0)) return start_ + static_cast<int>(i);
    return std::nullopt;
  }
  bool is_exact_zero() const { return exact_ && !valuation().has_value(); }

  Series truncate(int prec) const {
    if (prec >= precision()) return *this;
    std::vector<K> c;
    for (int k = start_; k < prec; ++k) c.push_back(coeff(k));
    return truncated(std::move(c), start_, prec);
  }

  friend Series operator+(const Series& a, const Series& b) { return combine(a, b, false); }
  friend Series operator-(const Series& a, const Series& b) { return combine(a, b, true); }
  Series operator-() const {
    Series r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend Series operator*(const Series& a, const Series& b) {
    const int va = a.valuation().value_or(a.precision());
    const int vb = b.valuation().value_or(b.precision());
    if (a.is_exact_zero() || b.is_exact_zero()) return exact({});
    const bool ex = a.exact_ && b.exact_;
    int prec;
    if (ex) {
      prec = a.start_ + b.start_ + static_cast<int>(a.c_.size() + b.c_.size());
    } else {
      long pa = a.exact_ ? long(kExact) : long(vb) + a.precision();
      long pb = b.exact_ ? long(kExact) : long(va) + b.precision();
      prec = static_cast<int>(std::min(pa, pb));
    }
    const int start = va + vb;
    std::vector<K> c(std::max(0, prec - start), K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      const int ea = a.start_ + static_cast<int>(i);
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        const int e = ea + b.start_ + static_cast<int>(j);
        if (e >= prec) break;
        if (e < start || b.c_[j] == 0) continue;
        c[static_cast<std::size_t>(e - start)] += a.c_[i] * b.c_[j];
      }
    }
    if (ex) return exact(std::move(c), start);
    return truncated(std::move(c), start, prec);
  }

  /// Multiplicative inverse; needs a known nonzero leading coefficient. The result
  /// keeps the relative precision of the input (or `exact_rel_prec` terms when the
  /// input is exact but not a monomial).
  Series inverse(int exact_rel_prec = 32) const {
    auto v = valuation();
    if (!v) throw DomainError("series inverse: leading coefficient not determined");
    int rel = exact_ ? exact_rel_prec : precision() - *v;
    if (exact_) {
      bool monomial = true;
      for (std::size_t i = static_cast<std::size_t>(*v - start_) + 1; i < c_.size(); ++i)
        if (!(c_[i] == 0)) monomial = false;
      if (monomial) return Series::monomial(K(1) / coeff(*v), -*v);
    }
    std::vector<K> a(rel, K(0));
    for (int i = 0; i < rel; ++i) a[i] = (exact_ && *v + i >= precision()) ? K(0) : coeff(*v + i);
    std::vector<K> b(rel, K(0));
    K inv0 = K(1) / a[0];
    b[0] = inv0;
    for (int n = 1; n < rel; ++n) {
      K acc = K(0);
      for (int i = 1; i <= n; ++i)
        if (!(a[i] == 0)) acc += a[i] * b[n - i];
      b[n] = -(acc * inv0);
    }
    return truncated(std::move(b), -*v, -*v + rel);
  }

  friend Series operator/(const Series& a, const Series& b) { return a * b.inverse(); }

  Series pow(unsigned e) const {
    Series out = constant(K(1));
    for (unsigned i = 0; i < e; ++i) out = out * *this;
    return out;
  }

  /// Substitutes this series into a polynomial (Horner).
  template <class F>
  Series compose_into(const Polynomial<F>& p) const {
    Series acc = exact({});
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * (*this) + constant(K(*it));
    return acc;
  }

 private:
  static Series combine(const Series& a, const Series& b, bool subtract) {
    const bool ex = a.exact_ && b.exact_;
    const int start = std::min(a.start_, b.start_);
    int prec = ex ? std::max(a.start_ + static_cast<int>(a.c_.size()), b.start_ + static_cast<int>(b.c_.size()))
                  : std::min(a.precision(), b.precision());
    std::vector<K> c(std::max(0, prec - start), K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      int e = a.start_ + static_cast<int>(i);
      if (e < prec) c[static_cast<std::size_t>(e - start)] += a.c_[i];
    }
    for (std::size_t i = 0; i < b.c_.size(); ++i) {
      int e = b.start_ + static_cast<int>(i);
      if (e >= prec) continue;
      auto& slot = c[static_cast<std::size_t>(e - start)];
      slot = subtract ? slot - b.c_[i] : slot + b.c_[i];
    }
    if (ex) return exact(std::move(c), start);
    return truncated(std::move(c), start, prec);
  }

  int start_ = 0;
  std::vector<K> c_;
  bool exact_ = true;
};

/// sqrt(F) for a power series F with F(0) = 1, to absolute precision `prec`.
template <class K>
std::vector<K> unit_sqrt_coefficients(const std::vector<K>& f, int prec) {
  std::vector<K> r(std::max(prec, 0), K(0));
  if (prec <= 0) return r;
  r[0] = K(1);
  const K half = K(1) / K(2);
  for (int k = 1; k < prec; ++k) {
    K acc = k < static_cast<int>(f.size()) ? f[k] : K(0);
    for (int i = 1; i < k; ++i) acc -= r[i] * r[k - i];
    r[k] = acc * half;
  }
  return r;
}

}  // namespace susy
