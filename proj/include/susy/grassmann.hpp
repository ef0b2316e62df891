#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "susy/rational_function.hpp"

namespace susy {

/// Ordered list of odd generator names; elements compare equal only over the same list.
class GrassmannAlgebra {
 public:
  static constexpr std::size_t kMaxGenerators = 16;

  explicit GrassmannAlgebra(std::vector<std::string> generators, std::string even_var = "z")
      : names_(std::move(generators)), even_var_(std::move(even_var)) {
    if (names_.size() > kMaxGenerators) throw InputError("too many odd generators");
  }

  const std::vector<std::string>& generators() const { return names_; }
  const std::string& even_variable() const { return even_var_; }
  std::size_t size() const { return names_.size(); }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  friend bool operator==(const GrassmannAlgebra& a, const GrassmannAlgebra& b) {
    return a.names_ == b.names_ && a.even_var_ == b.even_var_;
  }

 private:
  std::vector<std::string> names_;
  std::string even_var_;
};

using AlgebraPtr = std::shared_ptr<const GrassmannAlgebra>;

inline AlgebraPtr make_algebra(std::vector<std::string> generators, std::string even_var = "z") {
  return std::make_shared<const GrassmannAlgebra>(std::move(generators), std::move(even_var));
}

enum class Parity { Even = 0, Odd = 1 };

inline int parity_sign(Parity a, Parity b) { return (a == Parity::Odd && b == Parity::Odd) ? -1 : 1; }

/// Element of Lambda[generators] with coefficients in Q(z). A monomial is a bitmask
/// over generator indices, read in increasing index order.
class GrassmannElement {
 public:
  using Mask = std::uint32_t;

  explicit GrassmannElement(AlgebraPtr alg) : alg_(std::move(alg)) {}
  GrassmannElement(AlgebraPtr alg, RationalFunction scalar) : alg_(std::move(alg)) {
    if (!scalar.is_zero()) terms_.emplace(0, std::move(scalar));
  }

  static GrassmannElement generator(const AlgebraPtr& alg, std::size_t index) {
    if (index >= alg->size()) throw InputError("generator index out of range");
    GrassmannElement e(alg);
    e.terms_.emplace(Mask(1) << index, RationalFunction(1));
    return e;
  }
  static GrassmannElement generator(const AlgebraPtr& alg, const std::string& name) {
    auto idx = alg->index_of(name);
    if (!idx) throw InputError("unknown odd generator: " + name);
    return generator(alg, *idx);
  }
  static GrassmannElement even_variable(const AlgebraPtr& alg) {
    return GrassmannElement(alg, RationalFunction::var());
  }

  const AlgebraPtr& algebra() const { return alg_; }
  const std::map<Mask, RationalFunction>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  RationalFunction body() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? RationalFunction() : it->second;
  }
  GrassmannElement nilpotent_part() const {
    GrassmannElement r = *this;
    r.terms_.erase(0);
    return r;
  }
  RationalFunction coefficient(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? RationalFunction() : it->second;
  }

  /// Homogeneous parity, or nullopt for mixed elements. Zero counts as even.
  std::optional<Parity> parity() const {
    std::optional<Parity> p;
    for (const auto& [m, c] : terms_) {
      Parity q = (std::popcount(m) % 2) ? Parity::Odd : Parity::Even;
      if (p && *p != q) return std::nullopt;
      p = q;
    }
    return p.value_or(Parity::Even);
  }
  bool is_even() const { return parity() == Parity::Even; }
  bool is_odd() const { return parity() == Parity::Odd || is_zero(); }

  friend GrassmannElement operator+(const GrassmannElement& a, const GrassmannElement& b) {
    check_same(a, b);
    GrassmannElement r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend GrassmannElement operator-(const GrassmannElement& a, const GrassmannElement& b) {
    check_same(a, b);
    GrassmannElement r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }
  GrassmannElement operator-() const {
    GrassmannElement r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
    check_same(a, b);
    GrassmannElement r(a.alg_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        if (ma & mb) continue;
        RationalFunction c = ca * cb;
        if (merge_sign(ma, mb) < 0) c = -c;
        r.add_term(ma | mb, c);
      }
    }
    return r;
  }
  friend GrassmannElement operator*(const RationalFunction& s, const GrassmannElement& a) {
    GrassmannElement r(a.alg_);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, s * c);
    return r;
  }
  GrassmannElement& operator+=(const GrassmannElement& o) { return *this = *this + o; }
  GrassmannElement& operator-=(const GrassmannElement& o) { return *this = *this - o; }
  GrassmannElement& operator*=(const GrassmannElement& o) { return *this = *this * o; }
  friend bool operator==(const GrassmannElement& a, const GrassmannElement& b) {
    return *a.alg_ == *b.alg_ && a.terms_ == b.terms_;
  }

  /// Sign of moving the generators of b past those of a into increasing order.
  static int merge_sign(Mask a, Mask b) {
    int swaps = 0;
    for (Mask rest = b; rest; rest &= rest - 1) {
      int j = std::countr_zero(rest);
      Mask above = j + 1 >= 32 ? 0 : (~Mask(0) << (j + 1));
      swaps += std::popcount(a & above);
    }
    return (swaps % 2) ? -1 : 1;
  }

  /// Inverse via the finite geometric series in the nilpotent part; needs a nonzero body.
  GrassmannElement inverse() const {
    RationalFunction b = body();
    if (b.is_zero()) throw DomainError("Grassmann element with zero body is not invertible");
    GrassmannElement binv(alg_, RationalFunction(1) / b);
    GrassmannElement n = binv * nilpotent_part();  // x = b (1 + n)
    GrassmannElement sum(alg_, RationalFunction(1));
    GrassmannElement power(alg_, RationalFunction(1));
    for (std::size_t k = 1; k <= alg_->size() && !power.is_zero(); ++k) {
      power = power * (-n);
      sum += power;
    }
    return sum * binv;
  }

  /// Left derivative d/d(generator index).
  GrassmannElement d_odd(std::size_t index) const {
    GrassmannElement r(alg_);
    const Mask bit = Mask(1) << index;
    for (const auto& [m, c] : terms_) {
      if (!(m & bit)) continue;
      int before = std::popcount(m & (bit - 1));
      r.add_term(m & ~bit, (before % 2) ? -c : c);
    }
    return r;
  }
  /// Derivative with respect to the even variable (acts on coefficients).
  GrassmannElement d_even() const {
    GrassmannElement r(alg_);
    for (const auto& [m, c] : terms_) r.add_term(m, c.derivative());
    return r;
  }

  /// Renders as sorted monomials, e.g. "3/2·z^2·θη1".
  std::string to_string() const;

 private:
  static void check_same(const GrassmannElement& a, const GrassmannElement& b) {
    if (a.alg_ != b.alg_ && !(*a.alg_ == *b.alg_)) throw InputError("Grassmann generator-list mismatch");
  }
  void add_term(Mask m, const RationalFunction& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  AlgebraPtr alg_;
  std::map<Mask, RationalFunction> terms_;
};

inline std::string GrassmannElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < alg_->size(); ++i)
      if (m & (Mask(1) << i)) mono += alg_->generators()[i];
    std::string coeff = c.to_string(alg_->even_variable());
    std::size_t nonzero = 0;
    for (const auto& v : c.num().coeffs()) nonzero += (v != 0);
    if (!c.is_constant() && nonzero == 1 && c.den().is_constant()) {
      // single monomial: "3/2·z^2"
      const int k = c.num().degree();
      Rational lead = c.num().leading() / c.den().leading();
      std::string var = alg_->even_variable() + (k > 1 ? "^" + std::to_string(k) : "");
      if (lead == 1) coeff = var;
      else if (lead == -1) coeff = "-" + var;
      else coeff = susy::to_string(lead) + "·" + var;
    } else if (!c.is_constant()) {
      coeff = "(" + coeff + ")";
    }
    if (mono.empty())
      os << coeff;
    else if (c == RationalFunction(1))
      os << mono;
    else if (c == RationalFunction(-1))
      os << "-" << mono;
    else
      os << coeff << "·" << mono;
  }
  return os.str();
}

}  // namespace susy
