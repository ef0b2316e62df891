#pragma once

#include <string>
#include <utility>

#include "susy/rational.hpp"

namespace susy {

/// Element a + b*sqrt(d) of Q(sqrt(d)), d a non-square rational. d == 0 marks a plain
/// rational (b must then be 0). Square roots are principal complex roots, so for
/// negative d, sqrt(d) = i*sqrt(|d|).
class QuadNum {
 public:
  QuadNum() = default;
  QuadNum(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadNum(int a) : a_(a) {}                   // NOLINT(google-explicit-constructor)
  QuadNum(Rational a, Rational b, Rational d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (b_ == 0) d_ = 0;
    if (d_ == 0 && b_ != 0) throw DomainError("QuadNum: radical part without radicand");
    if (d_ != 0 && is_rational_square(d_)) throw DomainError("QuadNum: radicand is a rational square");
  }
  /// sqrt(d) itself, or its rational value when d is a square.
  static QuadNum sqrt_of(const Rational& d) {
    Rational r;
    if (is_rational_square(d, &r)) return QuadNum(r);
    return QuadNum(Rational(0), Rational(1), d);
  }

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  const Rational& radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  friend QuadNum operator+(const QuadNum& x, const QuadNum& y) {
    if (x.b_ == 0 && y.b_ == 0) return QuadNum(Rational(x.a_ + y.a_));
    return make(x.a_ + y.a_, x.b_ + y.b_, common(x, y));
  }
  friend QuadNum operator-(const QuadNum& x, const QuadNum& y) {
    if (x.b_ == 0 && y.b_ == 0) return QuadNum(Rational(x.a_ - y.a_));
    return make(x.a_ - y.a_, x.b_ - y.b_, common(x, y));
  }
  QuadNum operator-() const { return make(-a_, -b_, d_); }
  friend QuadNum operator*(const QuadNum& x, const QuadNum& y) {
    if (x.b_ == 0 && y.b_ == 0) return QuadNum(Rational(x.a_ * y.a_));
    Rational d = common(x, y);
    return make(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  QuadNum inverse() const {
    if (is_zero()) throw DomainError("QuadNum: division by zero");
    if (b_ == 0) return QuadNum(Rational(1 / a_));
    Rational norm = a_ * a_ - b_ * b_ * d_;
    return make(a_ / norm, -b_ / norm, d_);
  }
  friend QuadNum operator/(const QuadNum& x, const QuadNum& y) { return x * y.inverse(); }
  QuadNum& operator+=(const QuadNum& o) { return *this = *this + o; }
  QuadNum& operator-=(const QuadNum& o) { return *this = *this - o; }
  QuadNum& operator*=(const QuadNum& o) { return *this = *this * o; }
  friend bool operator==(const QuadNum& x, const QuadNum& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
  }
  friend bool operator==(const QuadNum& x, int v) { return x.b_ == 0 && x.a_ == v; }

  std::string to_string() const {
    if (b_ == 0) return susy::to_string(a_);
    return susy::to_string(a_) + " + " + susy::to_string(b_) + "*sqrt(" + susy::to_string(d_) + ")";
  }

 private:
  static QuadNum make(Rational a, Rational b, Rational d) {
    QuadNum q;
    q.a_ = std::move(a);
    q.b_ = std::move(b);
    q.d_ = q.b_ == 0 ? Rational(0) : std::move(d);
    return q;
  }
  static Rational common(const QuadNum& x, const QuadNum& y) {
    if (x.b_ == 0) return y.d_;
    if (y.b_ == 0) return x.d_;
    if (x.d_ != y.d_) throw DomainError("QuadNum: mixing different quadratic fields");
    return x.d_;
  }

  Rational a_ = 0;
  Rational b_ = 0;
  Rational d_ = 0;
};

/// Zero test for u1*w2 - u2*w1 where u1, u2 lie in Q(sqrt(d1)) and w1, w2 in Q(sqrt(d2)).
/// Used for 2x2 minors whose rows live in different quadratic fields.
inline bool cross_difference_is_zero(const QuadNum& u1, const QuadNum& w2, const QuadNum& u2, const QuadNum& w1) {
  // components on 1, sqrt(d1), sqrt(d2), sqrt(d1)*sqrt(d2)
  auto part = [](const QuadNum& u, const QuadNum& w, Rational* c) {
    c[0] += u.rational_part() * w.rational_part();
    c[1] += u.radical_part() * w.rational_part();
    c[2] += u.rational_part() * w.radical_part();
    c[3] += u.radical_part() * w.radical_part();
  };
  Rational c[4] = {0, 0, 0, 0};
  Rational neg[4] = {0, 0, 0, 0};
  part(u1, w2, c);
  part(u2, w1, neg);
  for (int i = 0; i < 4; ++i) c[i] -= neg[i];

  Rational d1 = !u1.is_rational() ? u1.radicand() : u2.radicand();
  Rational d2 = !w1.is_rational() ? w1.radicand() : w2.radicand();
  if (d1 == 0 && d2 == 0) return c[0] == 0;
  if (d1 == 0) return c[0] == 0 && c[2] == 0;
  if (d2 == 0) return c[0] == 0 && c[1] == 0;
  Rational root;
  if (is_rational_square(d1 * d2, &root)) {
    // sqrt(d1)*sqrt(d2) = sigma*root and sqrt(d2) = sigma*root*sqrt(d1)/d1
    Rational sigma = (d1 < 0 && d2 < 0) ? -1 : 1;
    Rational rat = c[0] + c[3] * sigma * root;
    Rational rad = c[1] + c[2] * sigma * root / d1;
    return rat == 0 && rad == 0;
  }
  return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0;
}

}  // namespace susy
