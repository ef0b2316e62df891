#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "susy/curve.hpp"
#include "susy/linalg.hpp"

namespace susy {

namespace detail {

inline void check_support(const HyperellipticCurve& c, const Divisor& d) {
  for (const auto& [p, m] : d.terms()) {
    if (p.is_infinity()) continue;
    if (!(p.y() * p.y() == QuadNum(c.f()(p.x())))) throw InputError("divisor support point is not on the curve");
    if (!p.is_rational() && d.multiplicity(p.conjugate()) != m)
      throw DomainError("divisor is not Galois-stable at a quadratic point");
  }
}

/// Appends the rows "coefficient of t^n vanishes" (n < r) for the candidates at p.
inline void add_vanishing_rows(const HyperellipticCurve& c, const CurvePoint& p, int r,
                               const std::vector<std::pair<QPoly, QPoly>>& cands, Matrix<Rational>& m) {
  LocalExpansion e = local_expansion(c, p, r);
  std::vector<Series<QuadNum>> col;
  col.reserve(cands.size());
  for (const auto& [a, b] : cands) col.push_back(numerator_series(a, b, e).truncate(r));
  for (int n = 0; n < r; ++n) {
    std::vector<Rational> rat(cands.size()), rad(cands.size());
    bool irrational = false;
    for (std::size_t j = 0; j < cands.size(); ++j) {
      QuadNum v = col[j].coeff(n);
      rat[j] = v.rational_part();
      rad[j] = v.radical_part();
      if (!v.is_rational()) irrational = true;
    }
    m.append_row(rat);
    if (irrational) m.append_row(rad);
  }
}

}  // namespace detail

/// Basis of L(D) = {fn : div(fn) + D >= 0}. Elements are F/h with F in span{x^i, x^j y}
/// and h clearing the finite poles allowed by D.
inline std::vector<FunctionFieldElement> rr_space(const HyperellipticCurve& c, const Divisor& d) {
  detail::check_support(c, d);
  if (d.degree() < 0) return {};
  const int g = c.genus();

  std::map<Rational, int> clear;  // x0 -> exponent of (x - x0) in h
  for (const auto& [p, m] : d.terms()) {
    if (p.is_infinity() || m <= 0) continue;
    int k = p.is_weierstrass() ? (m + 1) / 2 : m;
    int& slot = clear[p.x()];
    slot = std::max(slot, k);
  }
  QPoly h(Rational(1));
  for (const auto& [x0, k] : clear) h *= QPoly::linear_factor(x0).pow(static_cast<unsigned>(k));

  const int bound = d.multiplicity(CurvePoint::infinity()) + 2 * h.degree();
  if (bound < 0) return {};
  std::vector<std::pair<QPoly, QPoly>> cands;
  for (int i = 0; 2 * i <= bound; ++i) cands.emplace_back(QPoly::monomial(Rational(1), i), QPoly());
  for (int j = 0; 2 * j + 2 * g + 1 <= bound; ++j) cands.emplace_back(QPoly(), QPoly::monomial(Rational(1), j));

  std::set<Rational> xs;
  for (const auto& [p, m] : d.terms())
    if (!p.is_infinity()) xs.insert(p.x());

  Matrix<Rational> m;
  for (const auto& x0 : xs) {
    auto it = clear.find(x0);
    const int k = it == clear.end() ? 0 : it->second;
    std::vector<CurvePoint> pts;
    CurvePoint p = CurvePoint::above(c, x0, 1);
    pts.push_back(p);
    // a quadratic point's rows also cover its conjugate
    if (!p.is_weierstrass() && p.is_rational()) pts.push_back(p.conjugate());
    for (const auto& q : pts) {
      const int vh = q.is_weierstrass() ? 2 * k : k;
      const int r = vh - d.multiplicity(q);
      if (r > 0) detail::add_vanishing_rows(c, q, r, cands, m);
    }
  }

  std::vector<FunctionFieldElement> basis;
  for (const auto& v : kernel(std::move(m), cands.size())) {
    QPoly a, b;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] == 0) continue;
      a = a + cands[j].first.scaled(v[j]);
      b = b + cands[j].second.scaled(v[j]);
    }
    basis.emplace_back(c, a, b, h);
  }
  return basis;
}

inline Divisor canonical_divisor(const HyperellipticCurve& c) {
  return Divisor::point(CurvePoint::infinity(), 2 * c.genus() - 2);
}

inline int h0(const HyperellipticCurve& c, const Divisor& d) {
  if (d.degree() < 0) return 0;
  return static_cast<int>(rr_space(c, d).size());
}

/// Serre duality: h1(D) = h0(K - D).
inline int h1(const HyperellipticCurve& c, const Divisor& d) { return h0(c, canonical_divisor(c) - d); }

/// fn with div(fn) = -D when D is principal.
inline std::optional<FunctionFieldElement> principal_witness(const HyperellipticCurve& c, const Divisor& d) {
  if (d.degree() != 0) return std::nullopt;
  auto basis = rr_space(c, d);
  if (basis.size() != 1) return std::nullopt;
  return basis.front();
}

inline bool is_principal(const HyperellipticCurve& c, const Divisor& d) {
  return principal_witness(c, d).has_value();
}

/// Linear equivalence class, held through a representative.
class DivisorClass {
 public:
  DivisorClass(HyperellipticCurve c, Divisor rep) : curve_(std::move(c)), rep_(std::move(rep)) {
    detail::check_support(curve_, rep_);
  }

  const HyperellipticCurve& curve() const { return curve_; }
  const Divisor& representative() const { return rep_; }
  int degree() const { return rep_.degree(); }
  int h0() const { return susy::h0(curve_, rep_); }
  int h1() const { return susy::h1(curve_, rep_); }
  /// Same class with Weierstrass multiplicities reduced to 0 or 1.
  DivisorClass reduced() const { return {curve_, reduce_weierstrass(rep_)}; }

  friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    same_curve(a, b);
    return {a.curve_, a.rep_ + b.rep_};
  }
  friend DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
    same_curve(a, b);
    return {a.curve_, a.rep_ - b.rep_};
  }
  friend DivisorClass operator*(int k, const DivisorClass& a) { return {a.curve_, k * a.rep_}; }

  std::string to_string() const { return "[" + rep_.to_string() + "]"; }

 private:
  static void same_curve(const DivisorClass& a, const DivisorClass& b) {
    if (!(a.curve_ == b.curve_)) throw InputError("divisor classes on different curves");
  }

  HyperellipticCurve curve_;
  Divisor rep_;
};

inline DivisorClass canonical_class(const HyperellipticCurve& c) { return {c, canonical_divisor(c)}; }

inline bool class_eq(const DivisorClass& a, const DivisorClass& b) {
  if (a.degree() != b.degree()) return false;
  return is_principal(a.curve(), reduce_weierstrass((a - b).representative()));
}

enum class ThetaParity { Even, Odd };

inline std::string to_string(ThetaParity p) { return p == ThetaParity::Even ? "even" : "odd"; }

struct ThetaCharacteristic {
  DivisorClass cls;
  std::vector<int> subset;  // indices into the ascending finite branch points
  int h0 = 0;
  ThetaParity parity() const { return h0 % 2 ? ThetaParity::Odd : ThetaParity::Even; }
};

/// D_S = sum_{i in S} W_i + (g - 1 - |S|) infinity.
inline Divisor theta_divisor(const HyperellipticCurve& c, const std::vector<int>& subset) {
  const auto w = finite_weierstrass_points(c);
  Divisor d;
  for (int i : subset) {
    if (i < 0 || i >= static_cast<int>(w.size())) throw InputError("theta subset index out of range");
    if (d.multiplicity(w[static_cast<std::size_t>(i)]) != 0) throw InputError("theta subset has repeated index");
    d.add(w[static_cast<std::size_t>(i)], 1);
  }
  d.add(CurvePoint::infinity(), c.genus() - 1 - static_cast<int>(subset.size()));
  return d;
}

inline ThetaCharacteristic make_theta(const HyperellipticCurve& c, std::vector<int> subset) {
  std::sort(subset.begin(), subset.end());
  DivisorClass cls(c, theta_divisor(c, subset));
  const int n = static_cast<int>(c.roots().size());
  // S and its complement give the same class; keep the smaller side
  if (static_cast<int>(subset.size()) > c.genus()) {
    std::vector<int> comp;
    for (int i = 0; i < n; ++i)
      if (!std::binary_search(subset.begin(), subset.end(), i)) comp.push_back(i);
    subset = comp;
    cls = DivisorClass(c, theta_divisor(c, subset));
  }
  int dim = cls.h0();
  return {std::move(cls), std::move(subset), dim};
}

/// All 2^(2g) theta characteristics, ordered by |S| then lexicographically. Each is
/// checked against 2D ~ K.
inline std::vector<ThetaCharacteristic> theta_characteristics(const HyperellipticCurve& c) {
  const int n = static_cast<int>(c.roots().size());
  const int g = c.genus();
  std::vector<ThetaCharacteristic> out;
  for (int size = 0; size <= g; ++size) {
    std::vector<bool> pick(static_cast<std::size_t>(n), false);
    std::fill(pick.begin(), pick.begin() + size, true);
    do {
      std::vector<int> s;
      for (int i = 0; i < n; ++i)
        if (pick[static_cast<std::size_t>(i)]) s.push_back(i);
      ThetaCharacteristic t = make_theta(c, s);
      if (!is_principal(c, 2 * t.cls.representative() - canonical_divisor(c)))
        throw DomainError("theta enumeration: 2D is not canonical");
      out.push_back(std::move(t));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

/// First theta characteristic of the given parity in enumeration order. For Even the
/// first one with h0 = 0 is returned (on genus 3 the class 2*infinity is even with h0 = 2).
inline ThetaCharacteristic first_theta(const HyperellipticCurve& c, ThetaParity parity) {
  const int g = c.genus();
  for (int size = 0; size <= g; ++size) {
    std::vector<int> s;
    for (int i = 0; i < size; ++i) s.push_back(i);
    ThetaCharacteristic t = make_theta(c, s);
    if (t.parity() == parity && (parity == ThetaParity::Odd || t.h0 == 0)) return t;
  }
  throw DomainError("no theta characteristic of the requested parity");
}

}  // namespace susy
