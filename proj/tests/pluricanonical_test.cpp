#include <gtest/gtest.h>

#include "susy/io.hpp"
#include "test_support.hpp"

namespace susy {
namespace {

CurvePoint inf() { return CurvePoint::infinity(); }

SplitSupercurve w0_supercurve() {
  auto c = HyperellipticCurve::standard_model(2);
  return make_split_supercurve(c, DivisorClass(c, Divisor::point(CurvePoint::above(c, 0, 1), 1)));
}

SplitSupercurve even_supercurve(int g) {
  return make_split_supercurve(first_theta(HyperellipticCurve::standard_model(g), ThetaParity::Even));
}

TEST(RankTest, Examples) {
  auto r = pluri_canonical_rank(w0_supercurve(), 5);
  EXPECT_EQ(r.rank, (RankPair{5, 4}));
  EXPECT_TRUE(r.hypotheses);
  EXPECT_EQ(r.printed_formula, (RankPair{9, 4}));

  auto low = pluri_canonical_rank(even_supercurve(2), 1);
  EXPECT_EQ(low.rank, (RankPair{0, 2}));
  EXPECT_FALSE(low.hypotheses);

  auto g4 = pluri_canonical_rank(even_supercurve(4), 3);
  EXPECT_EQ(g4.rank, (RankPair{9, 6}));
  EXPECT_TRUE(g4.hypotheses);
  EXPECT_EQ(g4.printed_formula, (RankPair{15, 6}));
  EXPECT_THROW(pluri_canonical_rank(even_supercurve(2), 0), InputError);
}

TEST(RankTest, HypothesesHoldExactlyFromThree) {
  for (int g = 2; g <= 4; ++g)
    for (int nu = 1; nu <= 5; ++nu) EXPECT_EQ(pluri_canonical_rank(even_supercurve(g), nu).hypotheses, nu >= 3) << g << " " << nu;
}

// closed form (nu-1)(g-1) | nu(g-1), swapped for odd nu; second path: rr_space dimensions
TEST(RankPropertyTest, AgreesWithClosedFormAndDirectSpaces) {
  for (int g = 2; g <= 6; ++g) {
    auto x = even_supercurve(g);
    for (int nu = 3; nu <= 6; ++nu) {
      RankPair closed{(nu - 1) * (g - 1), nu * (g - 1)};
      if (nu % 2 == 1) closed = closed.swapped();
      auto r = pluri_canonical_rank(x, nu);
      ASSERT_EQ(r.rank, closed) << g << " " << nu;
      int direct_nu = static_cast<int>(rr_space(x.curve, nu * x.L.representative()).size());
      int direct_next = static_cast<int>(rr_space(x.curve, (nu + 1) * x.L.representative()).size());
      RankPair direct{direct_nu, direct_next};
      if (nu % 2 == 1) direct = direct.swapped();
      ASSERT_EQ(r.rank, direct);
      // the printed slot that agrees with the derivation
      int printed = (nu - 1) * g - nu + 1;
      ASSERT_EQ(nu % 2 == 0 ? r.rank.even : r.rank.odd, printed);
    }
  }
}

TEST(LocalFreenessTest, Examples) {
  auto x = w0_supercurve();
  const auto& c = x.curve;
  auto l3 = criterion_local_freeness(x, DivisorClass(c, 3 * x.L.representative()), Parity::Odd);
  EXPECT_TRUE(l3.locally_free);
  EXPECT_EQ(l3.rank, (RankPair{3, 2}));
  EXPECT_EQ(criterion_local_freeness(x, DivisorClass(c, 3 * x.L.representative()), Parity::Even).rank, (RankPair{2, 3}));

  auto trivial = criterion_local_freeness(x, DivisorClass(c, Divisor()), Parity::Even);
  EXPECT_FALSE(trivial.locally_free);
  EXPECT_EQ(trivial.h1_e, c.genus());

  auto canonical = criterion_local_freeness(x, canonical_class(c), Parity::Even);
  EXPECT_FALSE(canonical.locally_free);
  EXPECT_EQ(canonical.h1_e, 1);
}

TEST(VeryAmpleTest, Examples) {
  EXPECT_TRUE(very_ample_check(even_supercurve(4), 3).very_ample);
  auto c4 = HyperellipticCurve::standard_model(4);
  for (const auto& t : theta_characteristics(c4)) ASSERT_TRUE(very_ample_check(make_split_supercurve(t), 3).very_ample);

  auto fail = very_ample_check(w0_supercurve(), 4);
  EXPECT_FALSE(fail.very_ample);
  const ConditionCheck* bad = fail.failing();
  ASSERT_NE(bad, nullptr);
  ASSERT_EQ(bad->witness.size(), 2U);
  EXPECT_TRUE(bad->witness[0].is_infinity() && bad->witness[1].is_infinity());
  auto x = w0_supercurve();
  auto k = canonical_divisor(x.curve);
  EXPECT_EQ(h0(x.curve, k - 4 * x.L.representative() + Divisor::point(inf(), 2)), 1);  // degree 0, principal

  auto c3 = HyperellipticCurve::standard_model(3);
  auto odd3 = very_ample_check(make_split_supercurve(first_theta(c3, ThetaParity::Odd)), 3);
  EXPECT_FALSE(odd3.very_ample);
  EXPECT_TRUE(very_ample_check(even_supercurve(3), 3).very_ample);
  EXPECT_THROW(very_ample_check(even_supercurve(3), 2), DomainError);
}

TEST(VeryAmpleTest, MinimalNu) {
  EXPECT_EQ(minimal_nu(2), 5);
  EXPECT_EQ(minimal_nu(3), 4);
  EXPECT_EQ(minimal_nu(5), 3);
  EXPECT_EQ(minimal_nu(even_supercurve(3)), 3);
  EXPECT_THROW(minimal_nu(1), InputError);
}

bool expected_pass(int g, int nu) { return (g >= 4 && nu >= 3) || (g == 3 && nu >= 4) || (g == 2 && nu >= 5); }

TEST(ThresholdTest, TableMatchesThresholdsWithConfirmedWitnesses) {
  auto serial = threshold_table(6, 6, false);
  auto parallel = threshold_table(6, 6, true);
  ASSERT_EQ(serial.size(), 30U);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    const auto& cell = serial[i];
    EXPECT_EQ(cell.hypotheses && cell.pass_all, expected_pass(cell.g, cell.nu)) << cell.g << " " << cell.nu;
    if (!cell.pass_all) {
      ASSERT_TRUE(cell.witness.has_value());
      EXPECT_TRUE(cell.witness->confirmed);
      // independent confirmation on the theta in the witness
      auto c = HyperellipticCurve::standard_model(cell.g);
      auto t = make_theta(c, cell.witness->theta);
      int power = cell.witness->condition == 1 ? cell.nu : (cell.nu % 2 == 0 ? cell.nu + 1 : cell.nu);
      Divisor d = canonical_divisor(c) - power * t.cls.representative();
      for (const auto& p : cell.witness->points) d.add(p, 1);
      EXPECT_GE(h0(c, d), 1);
    }
    EXPECT_EQ(io::to_json(cell).dump(), io::to_json(parallel[i]).dump());
  }
  EXPECT_FALSE(serial[(3 - 2) * 6 + 2].pass_all);  // g=3, nu=3
  EXPECT_TRUE(serial[(3 - 2) * 6 + 2].pass_even);
}

TEST(ModelTest, GenusTwoNuFive) {
  auto m = build_model(w0_supercurve(), 5);
  EXPECT_EQ(m.ambient, (RankPair{4, 4}));
  EXPECT_EQ(m.even_sections.size(), 5U);
  EXPECT_EQ(m.odd_sections.size(), 4U);
  auto r = pluri_canonical_rank(w0_supercurve(), 5);
  EXPECT_EQ(static_cast<int>(m.even_sections.size()), r.rank.even);
  EXPECT_EQ(static_cast<int>(m.odd_sections.size()), r.rank.odd);
  auto check_sections = [](const std::vector<FunctionFieldElement>& sections, const Divisor& d) {
    for (const auto& s : sections) {
      Divisor div = divisor_of(s);
      for (const auto& [p, mult] : div.terms()) EXPECT_GE(mult + d.multiplicity(p), 0) << s.to_string();
    }
  };
  check_sections(m.even_sections, m.even_divisor);
  check_sections(m.odd_sections, m.odd_divisor);
  EXPECT_EQ(m.even_divisor.degree(), 6);
  EXPECT_EQ(m.odd_divisor.degree(), 5);

  auto report = verify_embedding(m, 200, 1);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.pairs_checked, 200);
}

TEST(ModelTest, GenusFourNuThree) {
  auto m = build_model(even_supercurve(4), 3);
  EXPECT_EQ(m.ambient, (RankPair{8, 6}));
  EXPECT_TRUE(verify_embedding(m, 50, 3).ok());
}

TEST(ModelTest, ForcedNuFourFailsAtWitness) {
  auto x = w0_supercurve();
  EXPECT_THROW(build_model(x, 4), DomainError);
  auto m = build_model(x, 4, true);
  auto report = verify_embedding(m, 20, 1);
  EXPECT_FALSE(report.ok());
  ASSERT_FALSE(report.failures.empty());
  auto witness = very_ample_check(x, 4).failing()->witness;
  bool at_witness = false;
  for (const auto& f : report.failures) at_witness |= (f.p == witness[0] && f.q == witness[1]);
  EXPECT_TRUE(at_witness);
}

TEST(ModelTest, SinglePointVacuous) {
  auto m = build_model(w0_supercurve(), 5);
  auto p = CurvePoint::above(m.curve, 7, 1);
  auto report = verify_embedding(m, std::vector<std::pair<CurvePoint, CurvePoint>>{{p, p}});
  EXPECT_TRUE(report.point_separation);
  EXPECT_TRUE(report.ok());
}

TEST(ModelTest, JsonRoundTrip) {
  auto m = build_model(w0_supercurve(), 5);
  auto back = io::model_from(io::Json::parse(io::to_json(m).dump()));
  EXPECT_TRUE(back == m);
}

TEST(SuperpointTest, ZeroDeformationIsSplit) {
  auto x = even_supercurve(2);
  SuperPointFamily fam{x, finite_weierstrass_points(x.curve).front(), std::nullopt};
  auto r = pushforward_over_superpoint(fam, 3);
  EXPECT_TRUE(r.free);
  EXPECT_EQ(r.rank, r.split_rank);
  EXPECT_EQ(r.rank, (RankPair{3, 2}));
}

TEST(SuperpointPropertyTest, RandomCochainsStayFree) {
  for (int g : {2, 3}) {
    auto x = even_supercurve(g);
    for (int nu : {3, 4}) {
      auto split = pluri_canonical_rank(x, nu).rank;
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto fam = random_superpoint_family(x, seed);
        ASSERT_TRUE(cochain_is_regular(fam));
        auto r = pushforward_over_superpoint(fam, nu);
        ASSERT_TRUE(r.free) << g << " " << nu << " seed " << seed;
        ASSERT_EQ(r.rank, split);
        ASSERT_EQ(r.split_rank, split);
      }
    }
  }
}

TEST(SuperpointTest, LowNuNeedsOverride) {
  auto x = even_supercurve(2);
  auto fam = random_superpoint_family(x, 5);
  EXPECT_THROW(pushforward_over_superpoint(fam, 1), DomainError);
  auto r = pushforward_over_superpoint(fam, 1, true);
  EXPECT_LE(r.rank.even, r.split_rank.even);
  EXPECT_LE(r.rank.odd, r.split_rank.odd);
}

TEST(CanonicalDemoTest, EvenThetaRanks) {
  for (int g = 2; g <= 4; ++g) {
    auto d = canonical_nonembedding_demo(even_supercurve(g));
    EXPECT_EQ(d.rank, (RankPair{0, g}));
    EXPECT_TRUE(d.even_theta);
    EXPECT_TRUE(d.obstruction);
  }
  auto odd = canonical_nonembedding_demo(make_split_supercurve(first_theta(HyperellipticCurve::standard_model(2), ThetaParity::Odd)));
  EXPECT_EQ(odd.rank, (RankPair{1, 2}));
  EXPECT_FALSE(odd.obstruction);
}

}  // namespace
}  // namespace susy
