#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "susy/grassmann.hpp"

namespace susy {

/// Vector field F d/dz + G d/dtheta on a 1|1 chart with coordinates (z, theta); the
/// other generators of the algebra (odd moduli) are constants for the field.
class VectorFieldSC {
 public:
  VectorFieldSC(GrassmannElement dz, GrassmannElement dtheta, std::size_t theta_index)
      : dz_(std::move(dz)), dtheta_(std::move(dtheta)), theta_(theta_index) {
    if (!(*dz_.algebra() == *dtheta_.algebra())) throw InputError("vector field components over different algebras");
    if (!parity()) throw InputError("vector field is not homogeneous");
  }
  VectorFieldSC(GrassmannElement dz, GrassmannElement dtheta, const std::string& theta_name = "θ")
      : VectorFieldSC(dz, std::move(dtheta), index_or_throw(dz.algebra(), theta_name)) {}

  /// d/dz, d/dtheta and the standard superconformal generator d/dtheta + theta d/dz.
  static VectorFieldSC d_z(const AlgebraPtr& alg, const std::string& theta = "θ") {
    return {GrassmannElement(alg, RationalFunction(1)), GrassmannElement(alg), theta};
  }
  static VectorFieldSC d_theta(const AlgebraPtr& alg, const std::string& theta = "θ") {
    return {GrassmannElement(alg), GrassmannElement(alg, RationalFunction(1)), theta};
  }
  static VectorFieldSC superconformal_generator(const AlgebraPtr& alg, const std::string& theta = "θ") {
    return {GrassmannElement::generator(alg, theta), GrassmannElement(alg, RationalFunction(1)), theta};
  }

  const GrassmannElement& dz() const { return dz_; }
  const GrassmannElement& dtheta() const { return dtheta_; }
  std::size_t theta_index() const { return theta_; }
  const AlgebraPtr& algebra() const { return dz_.algebra(); }

  /// Parity of the field = parity of its d/dz coefficient (d/dtheta is odd).
  std::optional<Parity> parity() const {
    auto pz = dz_.parity();
    auto pt = dtheta_.parity();
    if (!pz || !pt) return std::nullopt;
    if (dz_.is_zero() && dtheta_.is_zero()) return Parity::Even;
    if (dz_.is_zero()) return *pt == Parity::Even ? Parity::Odd : Parity::Even;
    Parity from_theta = *pt == Parity::Even ? Parity::Odd : Parity::Even;
    if (!dtheta_.is_zero() && from_theta != *pz) return std::nullopt;
    return *pz;
  }

  GrassmannElement apply(const GrassmannElement& e) const {
    return dz_ * e.d_even() + dtheta_ * e.d_odd(theta_);
  }

  VectorFieldSC scaled(const GrassmannElement& s) const { return {s * dz_, s * dtheta_, theta_}; }

  friend bool operator==(const VectorFieldSC& a, const VectorFieldSC& b) {
    return a.theta_ == b.theta_ && a.dz_ == b.dz_ && a.dtheta_ == b.dtheta_;
  }

  std::string to_string() const {
    return "(" + dz_.to_string() + ")∂z + (" + dtheta_.to_string() + ")∂θ";
  }

 private:
  static std::size_t index_or_throw(const AlgebraPtr& alg, const std::string& name) {
    auto i = alg->index_of(name);
    if (!i) throw InputError("unknown odd coordinate: " + name);
    return *i;
  }

  GrassmannElement dz_;
  GrassmannElement dtheta_;
  std::size_t theta_;
};

/// Graded commutator [X, Y] = XY - (-1)^{|X||Y|} YX, read off on the coordinates.
inline VectorFieldSC bracket(const VectorFieldSC& x, const VectorFieldSC& y) {
  if (x.theta_index() != y.theta_index() || !(*x.algebra() == *y.algebra()))
    throw InputError("bracket: fields over different variables");
  const int s = parity_sign(*x.parity(), *y.parity());
  auto comm = [&](const GrassmannElement& yc, const GrassmannElement& xc) {
    GrassmannElement a = x.apply(yc);
    GrassmannElement b = y.apply(xc);
    return s < 0 ? a + b : a - b;
  };
  return {comm(y.dz(), x.dz()), comm(y.dtheta(), x.dtheta()), x.theta_index()};
}

/// (1/2)[D, D] (= D^2) for an odd field D.
inline VectorFieldSC susy_generator_square(const VectorFieldSC& d) {
  if (d.parity() != Parity::Odd) throw DomainError("susy_generator_square: field is not odd");
  VectorFieldSC b = bracket(d, d);
  GrassmannElement half(d.algebra(), RationalFunction(Rational(1, 2)));
  return b.scaled(half);
}

/// Determinant of the bodies of (D, D^2) as a function of z. D generates a susy
/// structure at the points where it does not vanish.
struct SusyValidity {
  RationalFunction body_determinant;
  bool generically_independent = false;  // determinant not identically zero
  bool pointwise_independent = false;    // determinant has no zeros in the z-chart
};

inline SusyValidity susy_validity(const VectorFieldSC& d) {
  VectorFieldSC sq = susy_generator_square(d);
  // body of D is (0, g) since its dz coefficient is odd; body of D^2 is (f, 0)
  RationalFunction g = d.dtheta().body();
  RationalFunction f = sq.dz().body();
  SusyValidity v;
  v.body_determinant = -(g * f);
  v.generically_independent = !v.body_determinant.is_zero();
  v.pointwise_independent = v.generically_independent && v.body_determinant.num().is_constant();
  return v;
}

/// Coordinate change (z', theta') as functions of (z, theta).
struct CoordinateChange {
  GrassmannElement z;
  GrassmannElement theta;
};

struct SuperconformalCheck {
  bool superconformal = false;
  GrassmannElement residual;  // D z' - theta' D theta'
};

/// Verifies D z' = theta' D theta' with D = d/dtheta + theta d/dz.
inline SuperconformalCheck check_superconformal(const CoordinateChange& change, const std::string& theta = "θ") {
  if (!change.z.is_even()) throw InputError("check_superconformal: z' must be even");
  if (!change.theta.is_odd()) throw InputError("check_superconformal: theta' must be odd");
  VectorFieldSC d = VectorFieldSC::superconformal_generator(change.z.algebra(), theta);
  GrassmannElement residual = d.apply(change.z) - change.theta * d.apply(change.theta);
  return {residual.is_zero(), residual};
}

/// e(Z, Theta): substitutes an even Z for z and an odd Theta for theta. Coefficients
/// r(z) become r(body(Z) + n) = sum_k r^(k)(body(Z)) n^k / k!, a finite sum.
inline GrassmannElement substitute(const GrassmannElement& e, const GrassmannElement& z_new,
                                   const GrassmannElement& theta_new, std::size_t theta_index) {
  const auto& alg = e.algebra();
  if (!z_new.is_even()) throw InputError("substitute: z must map to an even element");
  if (!theta_new.is_odd()) throw InputError("substitute: theta must map to an odd element");
  RationalFunction zb = z_new.body();
  GrassmannElement n = z_new.nilpotent_part();
  GrassmannElement out(alg);
  for (const auto& [mask, coeff] : e.terms()) {
    GrassmannElement value(alg);
    RationalFunction deriv = coeff;
    GrassmannElement npow(alg, RationalFunction(1));
    Rational fact = 1;
    for (std::size_t k = 0; k <= alg->size() && !npow.is_zero(); ++k) {
      if (k > 0) fact *= static_cast<long>(k);
      value += RationalFunction(Rational(1) / fact) * deriv.compose(zb) * npow;
      deriv = deriv.derivative();
      npow = npow * n;
    }
    GrassmannElement mono(alg, RationalFunction(1));
    for (std::size_t i = 0; i < alg->size(); ++i) {
      if (!(mask & (GrassmannElement::Mask(1) << i))) continue;
      mono = mono * (i == theta_index ? theta_new : GrassmannElement::generator(alg, i));
    }
    out += value * mono;
  }
  return out;
}

/// outer o inner: first apply `inner`, then `outer`.
inline CoordinateChange compose(const CoordinateChange& outer, const CoordinateChange& inner, std::size_t theta_index) {
  return {substitute(outer.z, inner.z, inner.theta, theta_index),
          substitute(outer.theta, inner.z, inner.theta, theta_index)};
}

}  // namespace susy
