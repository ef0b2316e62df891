#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "susy/rational.hpp"

namespace susy {

/// Dense univariate polynomial over an exact field, coefficients in ascending degree.
/// The zero polynomial has no stored coefficients and degree -1.
template <class F>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(F constant) {  // NOLINT(google-explicit-constructor)
    if (constant != 0) c_.push_back(std::move(constant));
  }
  explicit Polynomial(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(const F& coeff, std::size_t degree) {
    std::vector<F> c(degree + 1, F(0));
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }
  static Polynomial x() { return monomial(F(1), 1); }
  /// (x - root)
  static Polynomial linear_factor(const F& root) { return Polynomial(std::vector<F>{-root, F(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<F>& coeffs() const { return c_; }
  F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F(0); }
  F leading() const { return c_.empty() ? F(0) : c_.back(); }

  F operator()(const F& at) const {
    F acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  /// Horner evaluation into any ring that accepts scalar multiplication and addition.
  template <class R>
  R evaluate_in(const R& at, const R& one) const {
    R acc = one * F(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + one * (*it);
    return acc;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<F> c(std::max(a.c_.size(), b.c_.size()), F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> c(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(c));
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  Polynomial scaled(const F& s) const {
    if (s == 0) return {};
    Polynomial r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
  }

  Polynomial pow(unsigned e) const {
    Polynomial out(F(1));
    for (unsigned i = 0; i < e; ++i) out *= *this;
    return out;
  }

  /// Euclidean division; divisor must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw DomainError("polynomial division by zero");
    if (degree() < d.degree()) return {Polynomial(), *this};
    std::vector<F> rem = c_;
    std::vector<F> quo(c_.size() - d.c_.size() + 1, F(0));
    const F inv_lead = F(1) / d.leading();
    for (int k = static_cast<int>(quo.size()) - 1; k >= 0; --k) {
      F q = rem[k + d.degree()] * inv_lead;
      quo[k] = q;
      if (q == 0) continue;
      for (int j = 0; j <= d.degree(); ++j) rem[k + j] -= q * d.c_[j];
    }
    rem.resize(d.c_.size() - 1);
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
  }
  friend Polynomial operator/(const Polynomial& a, const Polynomial& b) { return a.divmod(b).first; }
  friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return a.divmod(b).second; }

  Polynomial monic() const { return is_zero() ? *this : scaled(F(1) / leading()); }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<F> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * F(static_cast<long>(i));
    return Polynomial(std::move(c));
  }

  /// Coefficients of p(at + t) in t.
  Polynomial shifted(const F& at) const {
    std::vector<F> c = c_;
    const int n = static_cast<int>(c.size());
    for (int i = 0; i < n; ++i)
      for (int j = n - 2; j >= i; --j) c[j] += at * c[j + 1];
    return Polynomial(std::move(c));
  }

  /// Multiplicity of `root` as a zero.
  int order_at(const F& root) const {
    if (is_zero()) throw DomainError("order of the zero polynomial");
    Polynomial s = shifted(root);
    int k = 0;
    while (s.c_[k] == 0) ++k;
    return k;
  }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<F> c_;
};

template <class F>
Polynomial<F> gcd(Polynomial<F> a, Polynomial<F> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

using QPoly = Polynomial<Rational>;

template <class F>
std::string Polynomial<F>::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    F v = c_[i];
    if (v == 0) continue;
    bool neg = v < 0;
    F mag = neg ? F(-v) : v;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::string m = susy::to_string(mag);
    if (i == 0) {
      os << m;
    } else {
      if (mag != 1) os << m << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

/// Squarefree part (product of distinct irreducible factors), monic.
inline QPoly squarefree_part(const QPoly& p) {
  if (p.is_constant()) return QPoly(Rational(1));
  return (p / gcd(p, p.derivative())).monic();
}

namespace detail {

inline std::vector<Integer> factor_small(Integer n, std::map<Integer, int>& out) {
  if (n < 0) n = -n;
  std::vector<Integer> large;
  if (n <= 1) return large;
  for (unsigned long p = 2; p < 1000000UL && Integer(p) * Integer(p) <= n; ++p) {
    while (n % p == 0) {
      out[Integer(p)]++;
      n /= p;
    }
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0)
      out[n]++;
    else
      large.push_back(n);
  }
  return large;
}

inline std::vector<Integer> divisors_of(const Integer& n) {
  std::map<Integer, int> fac;
  if (!factor_small(n, fac).empty())
    throw DomainError("rational root search: integer too large to factor: " + n.get_str());
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : fac) {
    std::size_t base = divs.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

}  // namespace detail

/// Distinct rational roots of p, ascending. Uses the rational root theorem on the
/// squarefree part, so it needs the extreme coefficients to be factorable.
inline std::vector<Rational> rational_roots(const QPoly& p) {
  if (p.is_zero()) throw DomainError("roots of the zero polynomial");
  QPoly s = squarefree_part(p);
  std::vector<Rational> roots;
  if (s.degree() <= 0) return roots;
  if (s.coeff(0) == 0) {
    roots.push_back(0);
    s = s / QPoly::x();
  }
  if (s.degree() <= 0) return roots;
  // clear denominators into an integer polynomial
  Integer lcm_den = 1;
  for (const auto& c : s.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> ic;
  for (const auto& c : s.coeffs()) {
    Rational v = c * lcm_den;
    ic.push_back(v.get_num());
  }
  auto num_divs = detail::divisors_of(ic.front());
  auto den_divs = detail::divisors_of(ic.back());
  for (const auto& q : den_divs) {
    for (const auto& pn : num_divs) {
      for (int sign : {1, -1}) {
        Rational cand(pn * sign, q);
        cand.canonicalize();
        if (std::find(roots.begin(), roots.end(), cand) != roots.end()) continue;
        if (s(cand) == 0) roots.push_back(cand);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace susy
