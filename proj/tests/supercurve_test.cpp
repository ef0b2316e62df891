#include <gtest/gtest.h>

#include "test_support.hpp"

namespace susy {
namespace {

using testing::Rng;

CurvePoint inf() { return CurvePoint::infinity(); }

TEST(SupercurveTest, SusyFlagFollowsThetaCondition) {
  auto c = HyperellipticCurve::standard_model(2);
  auto w0 = CurvePoint::above(c, 0, 1);
  auto w1 = CurvePoint::above(c, 1, 1);

  auto x = make_split_supercurve(c, DivisorClass(c, Divisor::point(w0, 1)));
  EXPECT_TRUE(x.susy);

  auto even = make_split_supercurve(c, DivisorClass(c, Divisor::point(w0, 1) + Divisor::point(w1, 1) - Divisor::point(inf(), 1)));
  EXPECT_TRUE(even.susy);
  EXPECT_EQ(even.L.h0(), 0);

  EXPECT_TRUE(make_split_supercurve(c, DivisorClass(c, Divisor::point(w0, 2) - Divisor::point(inf(), 1))).susy);

  auto c2 = testing::pointed_g2();
  auto q1 = CurvePoint::affine(c2, -1, QuadNum(Rational(12)));
  auto q2 = CurvePoint::affine(c2, 2, QuadNum(Rational(6)));
  auto generic = make_split_supercurve(c2, DivisorClass(c2, Divisor::point(q1, 1) + Divisor::point(q2, 1) - Divisor::point(inf(), 1)));
  EXPECT_FALSE(generic.susy);

  EXPECT_THROW(make_split_supercurve(c, DivisorClass(c, Divisor::point(w0, 2))), InputError);
}

TEST(SupercurveTest, BerezinianBundleIsL) {
  auto c = HyperellipticCurve::standard_model(2);
  auto w0 = CurvePoint::above(c, 0, 1);
  auto x = make_split_supercurve(c, DivisorClass(c, Divisor::point(w0, 1)));
  auto ber = berezinian_bundle(x);
  EXPECT_EQ(ber.bosonic.representative(), Divisor::point(w0, 1));
  EXPECT_EQ(ber.rank, (RankPair{0, 1}));
  EXPECT_EQ(ber.bosonic.degree(), c.genus() - 1);
  EXPECT_TRUE(class_eq(2 * ber.bosonic, canonical_class(c)));
}

TEST(SupercurveTest, RankPairRendering) {
  RankPair a{3, 2};
  EXPECT_EQ(a.to_string(), "3|2");
  EXPECT_EQ((a + RankPair{1, 1}).to_string(), "4|3");
  EXPECT_EQ(a.swapped(), (RankPair{2, 3}));
}

TEST(TransitionTest, ReferenceTransitions) {
  for (const auto& tr : reference_transitions()) {
    auto rep = verify_lemma_2_2(tr);
    EXPECT_TRUE(rep.ok());
  }
  auto scaled = verify_lemma_2_2(reference_transitions()[1]);
  auto alg = scaled.berezinian.algebra();
  EXPECT_EQ(scaled.berezinian, GrassmannElement(alg, RationalFunction(2)));
  EXPECT_TRUE(verify_lemma_2_2());
}

TEST(TransitionTest, NonSuperconformalRejected) {
  // psi^2 != phi'
  EXPECT_THROW(verify_lemma_2_2({RationalFunction(4) * RationalFunction::var(), RationalFunction(3)}), DomainError);
  EXPECT_THROW(mobius_transition(1, 1, 1, 1), InputError);
}

TEST(TransitionPropertyTest, RandomMobiusTransitions) {
  Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    Rational a = rng.nonzero_rational(), b = rng.rational(), c = rng.nonzero_rational();
    Rational d = (1 + b * c) / a;
    auto tr = mobius_transition(a, b, c, d);
    EXPECT_EQ(tr.psi * tr.psi, tr.phi.derivative());
    auto rep = verify_lemma_2_2(tr);
    ASSERT_TRUE(rep.superconformal);
    ASSERT_TRUE(rep.generator_transforms);
    ASSERT_TRUE(rep.berezinian_matches) << rep.berezinian.to_string();
  }
}

void check_census_autoduality(const HyperellipticCurve& c) {
  for (const auto& t : theta_characteristics(c)) {
    auto x = make_split_supercurve(t);
    ASSERT_TRUE(x.susy);
    ASSERT_TRUE(is_autodual(x));
    ASSERT_TRUE(class_eq(dual_supercurve(x).L, x.L));
  }
}

TEST(DualityTest, ThetaCensusesAreAutodual) {
  check_census_autoduality(HyperellipticCurve::standard_model(2));
  check_census_autoduality(HyperellipticCurve::standard_model(3));
}

TEST(DualityTest, RandomNonThetaClassesAreNotAutodual) {
  Rng rng(42);
  int non_theta = 0;
  for (const auto& c : {testing::pointed_g2(), testing::pointed_g3()}) {
    auto pool = testing::support_pool(c);
    int found = 0;
    while (found < 10) {
      auto x = make_split_supercurve(c, DivisorClass(c, testing::random_divisor(rng, pool, c.genus() - 1)));
      ASSERT_EQ(is_autodual(x), x.susy);
      if (!x.susy) ++found;
    }
    non_theta += found;
  }
  EXPECT_EQ(non_theta, 20);
}

TEST(DualityTest, DualIsAnInvolution) {
  Rng rng(43);
  for (int i = 0; i < 30; ++i) {
    auto c = i % 2 ? testing::pointed_g3() : testing::pointed_g2();
    auto pool = testing::support_pool(c);
    auto x = make_split_supercurve(c, DivisorClass(c, testing::random_divisor(rng, pool, c.genus() - 1)));
    auto dual = dual_supercurve(x);
    EXPECT_EQ(dual.L.degree(), 2 * c.genus() - 2 - x.L.degree());
    ASSERT_TRUE(class_eq(dual_supercurve(dual).L, x.L));
  }
}

TEST(ModuliTest, DimensionsMatchClosedForm) {
  for (int g = 2; g <= 6; ++g) {
    auto m = moduli_dimension(g);
    EXPECT_EQ(m.dims, (RankPair{3 * g - 3, 2 * g - 2})) << g;
    EXPECT_TRUE(m.generic_theta);
  }
  EXPECT_THROW(moduli_dimension(1), InputError);
}

TEST(ModuliTest, DeformationShadow) {
  for (int g = 2; g <= 4; ++g) {
    auto d = deformation_injectivity_dims(g);
    EXPECT_EQ(d.h1_s, (RankPair{3 * g - 3, 2 * g - 2}));
    EXPECT_EQ(d.h1_tc, (RankPair{3 * g - 3, 2 * g - 2}));
    EXPECT_TRUE(d.injective_shadow);
  }
}

}  // namespace
}  // namespace susy
