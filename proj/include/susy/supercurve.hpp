#pragma once

#include <string>
#include <utility>
#include <vector>

#include "susy/riemann_roch.hpp"
#include "susy/supermatrix.hpp"
#include "susy/vector_field.hpp"

namespace susy {

/// Even|odd dimension pair, rendered "p|q".
struct RankPair {
  int even = 0;
  int odd = 0;

  friend RankPair operator+(const RankPair& a, const RankPair& b) { return {a.even + b.even, a.odd + b.odd}; }
  friend bool operator==(const RankPair& a, const RankPair& b) = default;
  RankPair swapped() const { return {odd, even}; }
  std::string to_string() const { return std::to_string(even) + "|" + std::to_string(odd); }
};

/// C_L: a curve with a degree g-1 class L; susy iff 2L ~ K.
struct SplitSupercurve {
  HyperellipticCurve curve;
  DivisorClass L;
  bool susy = false;
};

inline SplitSupercurve make_split_supercurve(const HyperellipticCurve& c, const DivisorClass& L) {
  if (!(L.curve() == c)) throw InputError("L lives on a different curve");
  if (L.degree() != c.genus() - 1) throw InputError("L must have degree g - 1");
  bool susy = class_eq(2 * L, canonical_class(c));
  return {c, L, susy};
}

inline SplitSupercurve make_split_supercurve(const ThetaCharacteristic& t) {
  return make_split_supercurve(t.cls.curve(), t.cls);
}

struct BerezinianBundle {
  DivisorClass bosonic;  // Ber^bos
  RankPair rank;         // always 0|1
};

inline BerezinianBundle berezinian_bundle(const SplitSupercurve& x) { return {x.L, RankPair{0, 1}}; }

/// C_{K - L}.
inline SplitSupercurve dual_supercurve(const SplitSupercurve& x) {
  DivisorClass dual = DivisorClass(x.curve, reduce_weierstrass((canonical_class(x.curve) - x.L).representative()));
  return make_split_supercurve(x.curve, dual);
}

inline bool is_autodual(const SplitSupercurve& x) {
  return class_eq(x.L, canonical_class(x.curve) - x.L);
}

// --- superconformal transitions --------------------------------------------

/// z' = phi(z), theta' = theta psi(z) with psi^2 = phi'.
struct SuperconformalTransition {
  RationalFunction phi;
  RationalFunction psi;
};

/// phi = (az + b)/(cz + d), psi = 1/(cz + d), needs ad - bc = 1.
inline SuperconformalTransition mobius_transition(const Rational& a, const Rational& b, const Rational& c,
                                                  const Rational& d) {
  if (a * d - b * c != 1) throw InputError("mobius transition needs ad - bc = 1");
  RationalFunction z = RationalFunction::var();
  RationalFunction den = RationalFunction(c) * z + RationalFunction(d);
  return {(RationalFunction(a) * z + RationalFunction(b)) / den, RationalFunction(1) / den};
}

struct TransitionReport {
  bool superconformal = false;
  bool generator_transforms = false;  // D = psi D'
  bool berezinian_matches = false;    // Ber(Jacobian) = psi
  GrassmannElement berezinian;
  bool ok() const { return superconformal && generator_transforms && berezinian_matches; }
};

/// Checks, for one transition, that D = d/dtheta + theta d/dz satisfies D = psi D' and
/// that the Berezinian of the super-Jacobian is psi.
inline TransitionReport verify_lemma_2_2(const SuperconformalTransition& tr) {
  auto alg = make_algebra({"θ"});
  GrassmannElement theta = GrassmannElement::generator(alg, 0);
  GrassmannElement psi(alg, tr.psi);
  CoordinateChange ch{GrassmannElement(alg, tr.phi), theta * psi};
  auto sc = check_superconformal(ch);
  if (!sc.superconformal) throw DomainError("transition is not superconformal: residual " + sc.residual.to_string());

  TransitionReport rep{true, false, false, GrassmannElement(alg)};
  VectorFieldSC d = VectorFieldSC::superconformal_generator(alg);
  // D' is the generator in (z', theta'): D'z' = theta', D'theta' = 1
  rep.generator_transforms = d.apply(ch.z) == psi * ch.theta && d.apply(ch.theta) == psi;

  // rows: d/dz, d/dtheta; columns: z', theta'
  GrassmannElement a = ch.z.d_even();
  GrassmannElement b = ch.theta.d_even();
  GrassmannElement c = ch.z.d_odd(0);
  GrassmannElement dd = ch.theta.d_odd(0);
  SuperMatrix jac(alg, {{a}}, {{b}}, {{c}}, {{dd}});
  rep.berezinian = berezinian(jac);
  rep.berezinian_matches = rep.berezinian == psi;
  return rep;
}

/// The three reference transitions: identity, z -> 4z, z -> z/(1 - z).
inline std::vector<SuperconformalTransition> reference_transitions() {
  RationalFunction z = RationalFunction::var();
  return {{z, RationalFunction(1)},
          {RationalFunction(4) * z, RationalFunction(2)},
          mobius_transition(1, 0, -1, 1)};
}

inline bool verify_lemma_2_2() {
  for (const auto& tr : reference_transitions())
    if (!verify_lemma_2_2(tr).ok()) return false;
  return true;
}

// --- moduli counts ------------------------------------------------------------

struct ModuliDimension {
  RankPair dims;           // h1(T_C) | h1(L^-1)
  bool generic_theta = true;  // computed at an even theta (h0(L) = 0)
};

/// h1(-K) | h1(-L) on the standard genus-g model at its first even theta.
inline ModuliDimension moduli_dimension(int g) {
  if (g < 2) throw InputError("moduli_dimension needs g >= 2");
  auto c = HyperellipticCurve::standard_model(g);
  auto t = first_theta(c, ThetaParity::Even);
  Divisor k = canonical_divisor(c);
  return {{h1(c, -k), h1(c, -t.cls.representative())}, t.h0 == 0};
}

struct DeformationDims {
  RankPair h1_s;   // H^1(C, S), S = D^2
  RankPair h1_tc;  // h1(T_C) | h1(T_C (x) L)
  bool injective_shadow = false;  // componentwise <=
};

inline DeformationDims deformation_injectivity_dims(int g) {
  if (g < 2) throw InputError("deformation_injectivity_dims needs g >= 2");
  auto c = HyperellipticCurve::standard_model(g);
  auto t = first_theta(c, ThetaParity::Even);
  Divisor k = canonical_divisor(c);
  const Divisor& l = t.cls.representative();
  DeformationDims d;
  d.h1_s = moduli_dimension(g).dims;
  d.h1_tc = {h1(c, -k), h1(c, l - k)};
  d.injective_shadow = d.h1_s.even <= d.h1_tc.even && d.h1_s.odd <= d.h1_tc.odd;
  return d;
}

}  // namespace susy
