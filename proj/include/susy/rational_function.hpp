#pragma once

#include <string>
#include <utility>

#include "susy/polynomial.hpp"

namespace susy {

/// Reduced fraction num/den of polynomials over Q in one even variable.
/// Canonical form: den monic, gcd(num, den) = 1, zero is 0/1.
class RationalFunction {
 public:
  RationalFunction() : den_(Rational(1)) {}
  RationalFunction(Rational c) : num_(std::move(c)), den_(Rational(1)) {}  // NOLINT
  RationalFunction(int c) : RationalFunction(Rational(c)) {}               // NOLINT
  RationalFunction(QPoly p) : num_(std::move(p)), den_(Rational(1)) {}    // NOLINT
  RationalFunction(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

  static RationalFunction var() { return RationalFunction(QPoly::x()); }

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const { return num_.coeff(0); }

  Rational operator()(const Rational& at) const {
    Rational d = den_(at);
    if (d == 0) throw DomainError("rational function evaluated at a pole");
    return num_(at) / d;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return a + (-b);
  }
  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_constant() && b.den_.is_constant()) {
      RationalFunction r;
      r.num_ = a.num_ * b.num_;
      return r;
    }
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DomainError("rational function division by zero");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction derivative() const {
    return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
  }

  /// this(inner(z))
  RationalFunction compose(const RationalFunction& inner) const {
    auto horner = [&](const QPoly& p) {
      RationalFunction acc;
      const auto& c = p.coeffs();
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * inner + RationalFunction(*it);
      return acc;
    };
    return horner(num_) / horner(den_);
  }

  std::string to_string(const std::string& var = "z") const {
    if (den_.is_constant()) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
  }

 private:
  void reduce() {
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = QPoly(Rational(1));
      return;
    }
    if (!den_.is_constant()) {
      QPoly g = gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = num_ / g;
        den_ = den_ / g;
      }
    }
    Rational lead = den_.leading();
    if (lead != 1) {
      num_ = num_.scaled(Rational(1) / lead);
      den_ = den_.scaled(Rational(1) / lead);
    }
  }

  QPoly num_;
  QPoly den_;
};

}  // namespace susy
