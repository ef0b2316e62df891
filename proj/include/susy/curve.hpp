#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "susy/polynomial.hpp"
#include "susy/quadratic.hpp"
#include "susy/series.hpp"

namespace susy {

/// y^2 = f(x) with f squarefree of odd degree 2g+1 >= 5 over Q. Cheap to copy.
class HyperellipticCurve {
 public:
  explicit HyperellipticCurve(std::vector<Rational> f_coeffs) {
    auto impl = std::make_shared<Impl>();
    impl->f = QPoly(std::move(f_coeffs));
    const int d = impl->f.degree();
    if (d < 5 || d % 2 == 0) throw InputError("curve: f must have odd degree >= 5");
    if (!gcd(impl->f, impl->f.derivative()).is_constant()) throw InputError("curve: f is not squarefree");
    impl->genus = (d - 1) / 2;
    try {
      auto roots = rational_roots(impl->f);
      if (static_cast<int>(roots.size()) == d) impl->roots = std::move(roots);
    } catch (const DomainError&) {
      // leave roots unknown; theta enumeration will refuse this curve
    }
    impl_ = std::move(impl);
  }

  /// y^2 = prod (x - r).
  static HyperellipticCurve with_roots(const std::vector<Rational>& roots) {
    QPoly f(Rational(1));
    for (const auto& r : roots) f *= QPoly::linear_factor(r);
    return HyperellipticCurve(f.coeffs());
  }
  /// The genus-g model with branch points 0, 1, ..., 2g and infinity.
  static HyperellipticCurve standard_model(int genus) {
    if (genus < 2) throw DomainError("genus must be at least 2");
    std::vector<Rational> roots;
    for (int i = 0; i <= 2 * genus; ++i) roots.emplace_back(i);
    return with_roots(roots);
  }

  const QPoly& f() const { return impl_->f; }
  int genus() const { return impl_->genus; }
  bool has_rational_branch_points() const { return impl_->roots.has_value(); }
  /// Finite branch points in ascending order; throws if some are irrational.
  const std::vector<Rational>& roots() const {
    if (!impl_->roots) throw DomainError("curve has irrational branch points");
    return *impl_->roots;
  }

  friend bool operator==(const HyperellipticCurve& a, const HyperellipticCurve& b) {
    return a.impl_ == b.impl_ || a.impl_->f == b.impl_->f;
  }

 private:
  struct Impl {
    QPoly f;
    int genus = 0;
    std::optional<std::vector<Rational>> roots;
  };
  std::shared_ptr<const Impl> impl_;
};

/// A point of the curve: the unique point at infinity, or (x0, y0) with x0 rational and
/// y0 in Q or in Q(sqrt(f(x0))).
class CurvePoint {
 public:
  static CurvePoint infinity() { return CurvePoint(); }
  static CurvePoint affine(const HyperellipticCurve& c, Rational x, QuadNum y) {
    QuadNum fx(c.f()(x));
    if (!(y * y == fx)) throw InputError("point is not on the curve");
    CurvePoint p;
    p.inf_ = false;
    p.x_ = std::move(x);
    p.y_ = std::move(y);
    return p;
  }
  /// (x0, +-sqrt(f(x0))), rational when f(x0) is a square.
  static CurvePoint above(const HyperellipticCurve& c, const Rational& x, int sign = 1) {
    QuadNum y = QuadNum::sqrt_of(c.f()(x));
    return affine(c, x, sign < 0 ? -y : y);
  }

  bool is_infinity() const { return inf_; }
  const Rational& x() const { return x_; }
  const QuadNum& y() const { return y_; }
  bool is_weierstrass() const { return inf_ || y_.is_zero(); }
  bool is_rational() const { return inf_ || y_.is_rational(); }
  /// Image under the hyperelliptic involution (x, y) -> (x, -y).
  CurvePoint conjugate() const {
    CurvePoint p = *this;
    p.y_ = -p.y_;
    return p;
  }

  friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.x_ == b.x_ && a.y_ == b.y_;
  }
  friend bool operator<(const CurvePoint& a, const CurvePoint& b) {
    if (a.inf_ != b.inf_) return a.inf_;  // infinity sorts first
    if (a.inf_) return false;
    if (a.x_ != b.x_) return a.x_ < b.x_;
    if (a.y_.rational_part() != b.y_.rational_part()) return a.y_.rational_part() < b.y_.rational_part();
    return a.y_.radical_part() < b.y_.radical_part();
  }

  std::string to_string() const {
    if (inf_) return "∞";
    if (y_.is_rational()) return "(" + susy::to_string(x_) + "," + susy::to_string(y_.rational_part()) + ")";
    std::string s = y_.radical_part() < 0 ? "-" : "";
    return "(" + susy::to_string(x_) + "," + s + "√" + susy::to_string(y_.radicand()) + ")";
  }

 private:
  CurvePoint() = default;
  bool inf_ = true;
  Rational x_ = 0;
  QuadNum y_;
};

/// Element (a(x) + b(x) y) / den(x) of the function field Q(x, y).
/// Canonical form: den monic and gcd(a, b, den) = 1.
class FunctionFieldElement {
 public:
  FunctionFieldElement(HyperellipticCurve c, QPoly a, QPoly b = {}, QPoly den = QPoly(Rational(1)))
      : curve_(std::move(c)), a_(std::move(a)), b_(std::move(b)), den_(std::move(den)) {
    normalize();
  }
  static FunctionFieldElement constant(const HyperellipticCurve& c, const Rational& v) { return {c, QPoly(v)}; }
  static FunctionFieldElement x(const HyperellipticCurve& c) { return {c, QPoly::x()}; }
  static FunctionFieldElement y(const HyperellipticCurve& c) { return {c, QPoly(), QPoly(Rational(1))}; }

  const HyperellipticCurve& curve() const { return curve_; }
  const QPoly& a() const { return a_; }
  const QPoly& b() const { return b_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  /// a^2 - b^2 f: the norm of the numerator down to Q(x).
  QPoly numerator_norm() const { return a_ * a_ - b_ * b_ * curve_.f(); }

  friend FunctionFieldElement operator+(const FunctionFieldElement& p, const FunctionFieldElement& q) {
    check(p, q);
    if (p.den_ == q.den_) return {p.curve_, p.a_ + q.a_, p.b_ + q.b_, p.den_};
    return {p.curve_, p.a_ * q.den_ + q.a_ * p.den_, p.b_ * q.den_ + q.b_ * p.den_, p.den_ * q.den_};
  }
  FunctionFieldElement operator-() const { return {curve_, -a_, -b_, den_}; }
  friend FunctionFieldElement operator-(const FunctionFieldElement& p, const FunctionFieldElement& q) {
    return p + (-q);
  }
  friend FunctionFieldElement operator*(const FunctionFieldElement& p, const FunctionFieldElement& q) {
    check(p, q);
    return {p.curve_, p.a_ * q.a_ + p.b_ * q.b_ * p.curve_.f(), p.a_ * q.b_ + p.b_ * q.a_, p.den_ * q.den_};
  }
  FunctionFieldElement scaled(const Rational& s) const { return {curve_, a_.scaled(s), b_.scaled(s), den_}; }
  FunctionFieldElement inverse() const {
    if (is_zero()) throw DomainError("function field: division by zero");
    QPoly n = numerator_norm();
    return {curve_, a_ * den_, -(b_ * den_), n};
  }
  friend FunctionFieldElement operator/(const FunctionFieldElement& p, const FunctionFieldElement& q) {
    return p * q.inverse();
  }
  FunctionFieldElement pow(int e) const {
    FunctionFieldElement base = e < 0 ? inverse() : *this;
    FunctionFieldElement out = constant(curve_, 1);
    for (int i = 0; i < std::abs(e); ++i) out = out * base;
    return out;
  }
  friend bool operator==(const FunctionFieldElement& p, const FunctionFieldElement& q) {
    return p.curve_ == q.curve_ && p.a_ == q.a_ && p.b_ == q.b_ && p.den_ == q.den_;
  }

  /// Parseable rendering "((a) + (b)*y)/(den)" with redundant parts dropped.
  std::string to_string() const {
    std::string num;
    if (!a_.is_zero()) num = a_.to_string("x");
    if (!b_.is_zero()) {
      std::string bs = b_ == QPoly(Rational(1))    ? "y"
                       : b_ == QPoly(Rational(-1)) ? "-y"
                                                   : "(" + b_.to_string("x") + ")*y";
      if (num.empty())
        num = bs;
      else if (bs[0] == '-')
        num += " - " + bs.substr(1);
      else
        num += " + " + bs;
    }
    if (num.empty()) num = "0";
    if (den_.is_constant()) return num;
    return "(" + num + ")/(" + den_.to_string("x") + ")";
  }

 private:
  static void check(const FunctionFieldElement& p, const FunctionFieldElement& q) {
    if (!(p.curve_ == q.curve_)) throw InputError("function field elements on different curves");
  }
  void normalize() {
    if (den_.is_zero()) throw DomainError("function field element with zero denominator");
    if (a_.is_zero() && b_.is_zero()) {
      den_ = QPoly(Rational(1));
      return;
    }
    if (!den_.is_constant()) {
      QPoly g = gcd(gcd(a_, b_), den_);
      if (!g.is_constant()) {
        a_ = a_ / g;
        b_ = b_ / g;
        den_ = den_ / g;
      }
    }
    Rational lead = den_.leading();
    if (lead != 1) {
      Rational inv = Rational(1) / lead;
      a_ = a_.scaled(inv);
      b_ = b_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  HyperellipticCurve curve_;
  QPoly a_, b_, den_;
};

/// Finite formal sum of curve points.
class Divisor {
 public:
  Divisor() = default;
  Divisor(std::initializer_list<std::pair<CurvePoint, int>> terms) {
    for (const auto& [p, m] : terms) add(p, m);
  }
  static Divisor point(const CurvePoint& p, int m = 1) {
    Divisor d;
    d.add(p, m);
    return d;
  }

  void add(const CurvePoint& p, int m) {
    if (m == 0) return;
    int& v = m_[p];
    v += m;
    if (v == 0) m_.erase(p);
  }
  int degree() const {
    int d = 0;
    for (const auto& [p, m] : m_) d += m;
    return d;
  }
  int multiplicity(const CurvePoint& p) const {
    auto it = m_.find(p);
    return it == m_.end() ? 0 : it->second;
  }
  const std::map<CurvePoint, int>& terms() const { return m_; }
  bool is_zero() const { return m_.empty(); }
  bool is_effective() const {
    return std::all_of(m_.begin(), m_.end(), [](const auto& t) { return t.second > 0; });
  }

  friend Divisor operator+(Divisor a, const Divisor& b) {
    for (const auto& [p, m] : b.m_) a.add(p, m);
    return a;
  }
  friend Divisor operator-(Divisor a, const Divisor& b) {
    for (const auto& [p, m] : b.m_) a.add(p, -m);
    return a;
  }
  friend Divisor operator*(int k, const Divisor& d) {
    Divisor r;
    for (const auto& [p, m] : d.m_) r.add(p, k * m);
    return r;
  }
  Divisor operator-() const { return -1 * *this; }
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.m_ == b.m_; }

  std::string to_string() const {
    if (m_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, m] : m_) {
      if (!first) os << (m < 0 ? " - " : " + ");
      else if (m < 0) os << "-";
      first = false;
      int a = std::abs(m);
      if (a != 1) os << a << "·";
      os << p.to_string();
    }
    return os.str();
  }

 private:
  std::map<CurvePoint, int> m_;
};

/// Finite Weierstrass points (r_i, 0) in ascending order of r_i.
inline std::vector<CurvePoint> finite_weierstrass_points(const HyperellipticCurve& c) {
  std::vector<CurvePoint> pts;
  for (const auto& r : c.roots()) pts.push_back(CurvePoint::affine(c, r, QuadNum(0)));
  return pts;
}

/// Rewrites m*W as (m mod 2)*W + (m - m mod 2)*infinity at every finite Weierstrass
/// point W, using div(x - r) = 2W - 2*infinity. Same divisor class.
inline Divisor reduce_weierstrass(const Divisor& d) {
  Divisor out;
  for (const auto& [p, m] : d.terms()) {
    if (p.is_infinity() || !p.is_weierstrass()) {
      out.add(p, m);
      continue;
    }
    int r = ((m % 2) + 2) % 2;
    out.add(p, r);
    out.add(CurvePoint::infinity(), m - r);
  }
  return out;
}

// --- local expansions -------------------------------------------------------

/// x(t), y(t) in a uniformizer t at a point: t = x - x0 at ordinary points, t = y at
/// finite Weierstrass points and t = y / x^(g+1) at infinity.
struct LocalExpansion {
  Series<QuadNum> x;
  Series<QuadNum> y;
  int ramification = 1;  // valuation of (x - x0), or -valuation of x at infinity
};

namespace detail {

/// Solves u * G(u) = t^2 for u = t^2/G(0) + ..., known to absolute precision `prec`.
inline Series<QuadNum> solve_branch_parameter(const QPoly& G, int prec) {
  using S = Series<QuadNum>;
  S u = S::truncated({}, 0, 2);
  const S t2 = S::monomial(QuadNum(1), 2);
  while (u.precision() < prec) {
    S gu = u.compose_into(G);
    u = (t2 * gu.inverse()).truncate(prec);
  }
  return u.truncate(prec);
}

}  // namespace detail

/// Power series of y around a non-Weierstrass x0: s(t)^2 = f(x0 + t) mod t^(order+1),
/// s(0) = branch * sqrt(f(x0)).
inline Series<QuadNum> series_expand_y(const HyperellipticCurve& c, const Rational& x0, int order, int branch = 1) {
  Rational fx0 = c.f()(x0);
  if (fx0 == 0) throw DomainError("series_expand_y: Weierstrass point, use y as uniformizer");
  QPoly shifted = c.f().shifted(x0);
  std::vector<QuadNum> unit;
  for (const auto& v : shifted.coeffs()) unit.emplace_back(Rational(v / fx0));
  auto r = unit_sqrt_coefficients(unit, order + 1);
  QuadNum y0 = QuadNum::sqrt_of(fx0);
  if (branch < 0) y0 = -y0;
  for (auto& v : r) v = v * y0;
  return Series<QuadNum>::truncated(std::move(r), 0, order + 1);
}

/// Expansion with x and y known to absolute precision at least `prec` (relative
/// precision at infinity).
inline LocalExpansion local_expansion(const HyperellipticCurve& c, const CurvePoint& p, int prec) {
  using S = Series<QuadNum>;
  prec = std::max(prec, 2);
  LocalExpansion e;
  if (p.is_infinity()) {
    const auto& fc = c.f().coeffs();
    std::vector<Rational> g(fc.rbegin(), fc.rend());  // G(w) = sum a_{2g+1-k} w^k
    S w = detail::solve_branch_parameter(QPoly(g), prec + 2);
    e.x = w.inverse();
    e.y = S::variable() * e.x.pow(static_cast<unsigned>(c.genus() + 1));
    e.ramification = 2;
    return e;
  }
  if (p.is_weierstrass()) {
    auto [g, rem] = c.f().divmod(QPoly::linear_factor(p.x()));
    S u = detail::solve_branch_parameter(g.shifted(p.x()), prec);
    e.x = S::constant(QuadNum(p.x())) + u;
    e.y = S::variable();
    e.ramification = 2;
    return e;
  }
  e.x = S::exact({QuadNum(p.x()), QuadNum(1)});
  QuadNum y0 = p.y();
  e.y = series_expand_y(c, p.x(), prec - 1);
  if (!(e.y.coeff(0) == y0)) e.y = -e.y;
  e.ramification = 1;
  return e;
}

/// Series of a polynomial expression a(x) + b(x) y at an expansion.
inline Series<QuadNum> numerator_series(const QPoly& a, const QPoly& b, const LocalExpansion& e) {
  return e.x.compose_into(a) + e.x.compose_into(b) * e.y;
}

/// Laurent series of fn in the uniformizer at p, known to absolute precision >= prec.
inline Series<QuadNum> local_series(const FunctionFieldElement& fn, const CurvePoint& p, int prec) {
  int work = prec + 4;
  for (int attempt = 0; attempt < 12; ++attempt) {
    LocalExpansion e = local_expansion(fn.curve(), p, work);
    Series<QuadNum> num = numerator_series(fn.a(), fn.b(), e);
    Series<QuadNum> den = e.x.compose_into(fn.den());
    if (den.valuation()) {
      Series<QuadNum> s = num * den.inverse();
      if (s.precision() >= prec) return s.truncate(prec);
    }
    work *= 2;
  }
  throw DomainError("local_series: precision could not be reached");
}

/// Order of vanishing of fn at p (negative for poles).
inline int valuation(const FunctionFieldElement& fn, const CurvePoint& p) {
  if (fn.is_zero()) throw DomainError("valuation of zero");
  const auto& c = fn.curve();
  if (p.is_infinity()) {
    // v(x) = -2 and v(y) = -(2g+1) have different parities, so the two parts never cancel
    int va = fn.a().is_zero() ? Series<QuadNum>::kExact : -2 * fn.a().degree();
    int vb = fn.b().is_zero() ? Series<QuadNum>::kExact : -2 * fn.b().degree() - (2 * c.genus() + 1);
    return std::min(va, vb) + 2 * fn.den().degree();
  }
  if (!(p.y() * p.y() == QuadNum(c.f()(p.x())))) throw InputError("valuation: point is not on the curve");
  const int ram = p.is_weierstrass() ? 2 : 1;
  const int den_order = fn.den().order_at(p.x()) * ram;
  if (p.is_weierstrass()) {
    int va = fn.a().is_zero() ? Series<QuadNum>::kExact : 2 * fn.a().order_at(p.x());
    int vb = fn.b().is_zero() ? Series<QuadNum>::kExact : 2 * fn.b().order_at(p.x()) + 1;
    return std::min(va, vb) - den_order;
  }
  // v_P(num) + v_{iota P}(num) = ord_{x0}(norm) bounds the expansion length
  const int bound = fn.numerator_norm().order_at(p.x());
  LocalExpansion e = local_expansion(c, p, bound + 1);
  auto v = numerator_series(fn.a(), fn.b(), e).valuation();
  if (!v || *v > bound) throw DomainError("valuation: expansion did not resolve the leading term");
  return *v - den_order;
}

/// Divisor of a nonzero function; needs every zero and pole to have a rational x.
inline Divisor divisor_of(const FunctionFieldElement& fn) {
  if (fn.is_zero()) throw DomainError("divisor of zero");
  const auto& c = fn.curve();
  Divisor d;
  d.add(CurvePoint::infinity(), valuation(fn, CurvePoint::infinity()));
  std::vector<Rational> xs;
  if (!fn.numerator_norm().is_constant()) xs = rational_roots(fn.numerator_norm());
  if (!fn.den().is_constant())
    for (const auto& r : rational_roots(fn.den()))
      if (std::find(xs.begin(), xs.end(), r) == xs.end()) xs.push_back(r);
  for (const auto& r : xs) {
    CurvePoint p = CurvePoint::above(c, r, 1);
    d.add(p, valuation(fn, p));
    if (!p.is_weierstrass()) {
      CurvePoint q = p.conjugate();
      d.add(q, valuation(fn, q));
    }
  }
  if (d.degree() != 0) throw DomainError("divisor_of: support has irrational x-coordinates");
  return d;
}

/// Rational points (x, y) with x = p/q, |p| <= max_num, 1 <= q <= max_den, excluding
/// Weierstrass points. Both signs of y are returned.
inline std::vector<CurvePoint> find_rational_points(const HyperellipticCurve& c, int max_num, int max_den) {
  std::vector<CurvePoint> pts;
  for (int q = 1; q <= max_den; ++q) {
    for (int p = -max_num; p <= max_num; ++p) {
      Rational x(p, q);
      x.canonicalize();
      if (x.get_den() != q) continue;
      Rational fx = c.f()(x);
      Rational root;
      if (fx == 0 || !is_rational_square(fx, &root)) continue;
      pts.push_back(CurvePoint::affine(c, x, QuadNum(root)));
      pts.push_back(CurvePoint::affine(c, x, QuadNum(Rational(-root))));
    }
  }
  return pts;
}

}  // namespace susy
