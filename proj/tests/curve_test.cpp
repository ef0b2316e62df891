#include <gtest/gtest.h>

#include "susy/io.hpp"
#include "test_support.hpp"

namespace susy {
namespace {

using testing::Rng;

HyperellipticCurve quintic() { return HyperellipticCurve::standard_model(2); }

FunctionFieldElement fx(const HyperellipticCurve& c) { return FunctionFieldElement::x(c); }
FunctionFieldElement fy(const HyperellipticCurve& c) { return FunctionFieldElement::y(c); }
FunctionFieldElement k(const HyperellipticCurve& c, const Rational& r) { return FunctionFieldElement::constant(c, r); }

TEST(CurveTest, ValidatesModel) {
  EXPECT_EQ(quintic().genus(), 2);
  EXPECT_EQ(HyperellipticCurve::standard_model(3).genus(), 3);
  EXPECT_THROW(HyperellipticCurve({0, 1, 0, 1}), InputError);           // cubic
  EXPECT_THROW(HyperellipticCurve({0, 0, 1, 0, 0, 1}), InputError);     // x^2 (x^3 + 1) not squarefree
  EXPECT_THROW(HyperellipticCurve({1, 0, 0, 0, 0, 0, 1}), InputError);  // even degree
}

TEST(CurveTest, PointsAreChecked) {
  auto c = quintic();
  EXPECT_THROW(CurvePoint::affine(c, 5, QuadNum(Rational(1))), InputError);
  auto p = CurvePoint::affine(c, 5, QuadNum::sqrt_of(120));
  EXPECT_FALSE(p.is_weierstrass());
  EXPECT_TRUE(CurvePoint::infinity().is_weierstrass());
  EXPECT_TRUE(CurvePoint::above(c, 3, 1).is_weierstrass());
}

TEST(CurveTest, ValuationExamples) {
  auto c = quintic();
  auto w0 = CurvePoint::above(c, 0, 1);
  EXPECT_EQ(valuation(fx(c), w0), 2);
  EXPECT_EQ(valuation(fx(c), CurvePoint::infinity()), -2);
  EXPECT_EQ(valuation(fy(c), CurvePoint::infinity()), -5);
  EXPECT_EQ(valuation(fy(c), w0), 1);
  for (const auto& p : testing::support_pool(testing::pointed_g2())) EXPECT_EQ(valuation(k(testing::pointed_g2(), 1), p), 0);
  EXPECT_THROW(valuation(k(c, 0), w0), DomainError);
}

TEST(CurveTest, DivisorExamples) {
  auto c = quintic();
  auto inf = CurvePoint::infinity();
  Divisor dx = Divisor::point(CurvePoint::above(c, 0, 1), 2) + Divisor::point(inf, -2);
  EXPECT_EQ(divisor_of(fx(c)), dx);

  Divisor dy = Divisor::point(inf, -5);
  for (int r = 0; r <= 4; ++r) dy.add(CurvePoint::above(c, r, 1), 1);
  EXPECT_EQ(divisor_of(fy(c)), dy);
  EXPECT_EQ(divisor_of(k(c, 7)), Divisor());
}

TEST(CurveTest, CancellationAtOrdinaryPoint) {
  // y - 12 vanishes at (-1, 12) on the pointed model; the conjugate point does not
  auto c = testing::pointed_g2();
  auto p = CurvePoint::affine(c, -1, QuadNum(Rational(12)));
  auto fn = fy(c) - k(c, 12);
  EXPECT_EQ(valuation(fn, p), 1);
  EXPECT_EQ(valuation(fn, p.conjugate()), 0);
  EXPECT_EQ(valuation(fn * fn, p), 2);
}

TEST(CurveTest, SeriesSquaresToShiftedPolynomial) {
  auto c = testing::pointed_g2();
  std::vector<Rational> xs{-3, -1, 2, 6, 10, Rational(5, 4), 7, -5, Rational(1, 3)};
  for (const auto& x0 : xs) {
    QPoly shifted = c.f().shifted(x0);
    for (int order = 0; order <= 8; ++order) {
      auto s = series_expand_y(c, x0, order);
      auto sq = s * s;
      for (int i = 0; i <= order; ++i) ASSERT_EQ(sq.coeff(i), QuadNum(shifted.coeff(i))) << x0 << " " << order;
      auto neg = series_expand_y(c, x0, order, -1);
      for (int i = 0; i <= order; ++i) ASSERT_EQ(neg.coeff(i), QuadNum(0) - s.coeff(i));
    }
  }
  EXPECT_EQ(series_expand_y(c, -1, 0).coeff(0), QuadNum(Rational(12)));
  EXPECT_THROW(series_expand_y(c, 0, 3), DomainError);
}

TEST(CurveTest, LocalExpansionSatisfiesCurveEquation) {
  auto c = testing::pointed_g2();
  std::vector<CurvePoint> pts = testing::support_pool(c);
  pts.push_back(CurvePoint::above(c, 7, 1));
  for (const auto& p : pts) {
    auto e = local_expansion(c, p, 10);
    auto lhs = e.y * e.y;
    auto rhs = e.x.compose_into(c.f());
    auto diff = lhs - rhs;
    for (int i = 0; i < std::min(diff.precision(), 6); ++i) ASSERT_TRUE(diff.coeff(i) == QuadNum(0)) << p.to_string();
  }
}

FunctionFieldElement random_function(Rng& rng, const HyperellipticCurve& c) {
  while (true) {
    QPoly den = rng.poly(2);
    if (den.is_zero()) continue;
    FunctionFieldElement fn(c, rng.poly(3), rng.coin() ? rng.poly(1) : QPoly(), den);
    if (!fn.is_zero()) return fn;
  }
}

std::vector<CurvePoint> random_points(Rng& rng, const HyperellipticCurve& c, int n) {
  auto pool = testing::support_pool(c);
  std::vector<CurvePoint> out;
  for (int i = 0; i < n; ++i) {
    if (rng.uniform(0, 2) == 0) {
      Rational x = rng.rational(9);
      if (c.f()(x) == 0) x += 11;
      out.push_back(CurvePoint::above(c, x, rng.coin() ? 1 : -1));
    } else {
      out.push_back(pool[rng.uniform(0, static_cast<int>(pool.size()) - 1)]);
    }
  }
  return out;
}

// norm oracle: v_P + v_{iota P} = ord(a^2 - b^2 f) - 2 ord(den) in the x-coordinate
TEST(CurvePropertyTest, ValuationMatchesNormOrder) {
  auto c = testing::pointed_g2();
  Rng rng(21);
  auto pts = random_points(rng, c, 100);
  for (const auto& p : pts) {
    auto fn = random_function(rng, c);
    if (p.is_infinity()) continue;
    int sum = valuation(fn, p) + valuation(fn, p.conjugate());
    int ram = p.is_weierstrass() ? 2 : 1;
    int expected = ram * (fn.numerator_norm().order_at(p.x()) - 2 * fn.den().order_at(p.x()));
    ASSERT_EQ(sum, expected) << fn.to_string() << " at " << p.to_string();
  }
}

TEST(CurvePropertyTest, ValuationIsAdditive) {
  auto c = testing::pointed_g2();
  Rng rng(22);
  auto pts = random_points(rng, c, 100);
  for (const auto& p : pts) {
    auto f = random_function(rng, c);
    auto g = random_function(rng, c);
    ASSERT_EQ(valuation(f * g, p), valuation(f, p) + valuation(g, p)) << f.to_string() << " ; " << g.to_string();
  }
}

// products of x - r and y keep every zero and pole at rational x
FunctionFieldElement random_split_function(Rng& rng, const HyperellipticCurve& c) {
  FunctionFieldElement out = k(c, rng.nonzero_rational());
  int factors = rng.uniform(1, 4);
  for (int i = 0; i < factors; ++i) {
    FunctionFieldElement f = rng.uniform(0, 3) == 0 ? fy(c) : fx(c) - k(c, rng.rational(6));
    out = rng.coin() ? out * f : out / f;
  }
  return out;
}

TEST(CurvePropertyTest, DivisorsHaveDegreeZeroAndAreMultiplicative) {
  auto c = testing::pointed_g2();
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    auto f = random_split_function(rng, c);
    auto g = random_split_function(rng, c);
    auto df = divisor_of(f);
    ASSERT_EQ(df.degree(), 0) << f.to_string();
    ASSERT_EQ(divisor_of(f * g), df + divisor_of(g));
    for (const auto& [p, m] : df.terms()) ASSERT_EQ(valuation(f, p), m);
  }
}

TEST(CurvePropertyTest, InvolutionPreservesFunctionsOfX) {
  auto c = testing::pointed_g2();
  Rng rng(24);
  auto pts = random_points(rng, c, 100);
  for (const auto& p : pts) {
    QPoly den;
    do den = rng.poly(2);
    while (den.is_zero());
    FunctionFieldElement fn(c, rng.poly(3) + QPoly(Rational(1)), QPoly(), den);
    if (fn.is_zero()) continue;
    ASSERT_EQ(valuation(fn, p), valuation(fn, p.conjugate()));
  }
}

TEST(CurveTest, FunctionStringsRoundTrip) {
  auto c = testing::pointed_g3();
  Rng rng(25);
  for (int i = 0; i < 50; ++i) {
    auto fn = random_function(rng, c);
    ASSERT_EQ(io::function_from(c, fn.to_string()), fn) << fn.to_string();
  }
  EXPECT_EQ(io::function_from(c, "(y)/(x)"), fy(c) / fx(c));
}

TEST(CurveTest, PointAndDivisorJsonRoundTrip) {
  auto c = testing::pointed_g2();
  Divisor d;
  d.add(CurvePoint::infinity(), 3);
  d.add(CurvePoint::above(c, 0, 1), -1);
  d.add(CurvePoint::affine(c, Rational(5, 4), QuadNum(Rational(105, 32))), 2);
  d.add(CurvePoint::above(c, 7, 1), 1);
  auto j = io::to_json(d);
  EXPECT_EQ(io::divisor_from(c, j), d);
  EXPECT_EQ(io::curve_from(io::to_json(c)), c);
}

}  // namespace
}  // namespace susy
