#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "susy/io.hpp"
#include "test_support.hpp"

using namespace susy;
using testing::Rng;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// records the first failure
struct Check {
  Outcome& out;
  void operator()(bool cond, const std::string& what) {
    if (!cond && out.ok) {
      out.ok = false;
      out.detail = what;
    }
  }
};

SplitSupercurve w0_supercurve() {
  auto c = HyperellipticCurve::standard_model(2);
  return make_split_supercurve(c, DivisorClass(c, Divisor::point(CurvePoint::above(c, 0, 1), 1)));
}

SplitSupercurve even_supercurve(int g) {
  return make_split_supercurve(first_theta(HyperellipticCurve::standard_model(g), ThetaParity::Even));
}

std::string cell(int g, int nu) { return "g=" + std::to_string(g) + " nu=" + std::to_string(nu); }

Outcome canonical_demo() {
  Outcome o;
  Check check{o};
  for (int g : {2, 3}) {
    auto c = HyperellipticCurve::standard_model(g);
    int seen = 0;
    for (const auto& t : theta_characteristics(c)) {
      if (t.parity() != ThetaParity::Even || t.h0 != 0) continue;
      ++seen;
      auto x = make_split_supercurve(t);
      auto d = canonical_nonembedding_demo(x);
      Divisor l = t.cls.representative();
      RankPair direct{static_cast<int>(rr_space(c, l).size()), static_cast<int>(rr_space(c, 2 * l).size())};
      check(d.rank == (RankPair{0, g}), "g=" + std::to_string(g) + " rank " + d.rank.to_string());
      check(direct == d.rank, "direct spaces disagree at g=" + std::to_string(g));
      check(d.obstruction, "no obstruction flagged at g=" + std::to_string(g));
    }
    check(seen > 0, "no even theta with h0 = 0 at g=" + std::to_string(g));
  }
  return o;
}

Outcome rank_slot() {
  Outcome o;
  Check check{o};
  for (int g = 2; g <= 6; ++g) {
    auto x = even_supercurve(g);
    for (int nu = 3; nu <= 6; ++nu) {
      auto r = pluri_canonical_rank(x, nu);
      int printed = (nu - 1) * g - nu + 1;
      check(r.hypotheses, cell(g, nu) + " hypotheses");
      check((nu % 2 == 0 ? r.rank.even : r.rank.odd) == printed, cell(g, nu) + " slot " + r.rank.to_string());
      int a = static_cast<int>(rr_space(x.curve, nu * x.L.representative()).size());
      int b = static_cast<int>(rr_space(x.curve, (nu + 1) * x.L.representative()).size());
      // Riemann-Roch in degree nu(g-1) > 2g-2
      check(a == nu * (g - 1) - g + 1 && b == (nu + 1) * (g - 1) - g + 1, cell(g, nu) + " rr_space dimensions");
      RankPair direct = nu % 2 == 0 ? RankPair{a, b} : RankPair{b, a};
      check(direct == r.rank, cell(g, nu) + " direct " + direct.to_string());
    }
  }
  return o;
}

bool expected_pass(int g, int nu) { return (g >= 4 && nu >= 3) || (g == 3 && nu >= 4) || (g == 2 && nu >= 5); }

Outcome thresholds() {
  Outcome o;
  Check check{o};
  auto serial = threshold_table(6, 6, false);
  auto parallel = threshold_table(6, 6, true);
  check(serial.size() == 30, "table size");
  for (std::size_t i = 0; i < serial.size() && i < parallel.size(); ++i) {
    const auto& t = serial[i];
    check((t.hypotheses && t.pass_all) == expected_pass(t.g, t.nu), cell(t.g, t.nu) + " verdict");
    check(io::to_json(t).dump() == io::to_json(parallel[i]).dump(), cell(t.g, t.nu) + " serial/parallel");
    if (t.pass_all) continue;
    if (!t.witness) {
      check(false, cell(t.g, t.nu) + " missing witness");
      continue;
    }
    auto c = HyperellipticCurve::standard_model(t.g);
    auto th = make_theta(c, t.witness->theta);
    int power = t.witness->condition == 1 ? t.nu : (t.nu % 2 == 0 ? t.nu + 1 : t.nu);
    Divisor d = canonical_divisor(c) - power * th.cls.representative();
    for (const auto& p : t.witness->points) d.add(p, 1);
    check(t.witness->confirmed && h0(c, d) >= 1, cell(t.g, t.nu) + " witness not confirmed");
  }
  if (serial.size() == 30) check(serial[8].pass_even && !serial[8].pass_all, "g=3 nu=3 even/all split");
  return o;
}

Outcome census() {
  Outcome o;
  Check check{o};
  for (int g : {2, 3}) {
    auto c = HyperellipticCurve::standard_model(g);
    auto thetas = theta_characteristics(c);
    Divisor k = canonical_divisor(c);
    int odd = 0;
    for (const auto& t : thetas) {
      check(is_principal(c, 2 * t.cls.representative() - k), "2L != K at g=" + std::to_string(g));
      int direct = static_cast<int>(rr_space(c, t.cls.representative()).size());
      check(direct == t.h0, "h0 mismatch at g=" + std::to_string(g));
      odd += direct % 2;
    }
    int total = 1 << (2 * g);
    int want_odd = (1 << (g - 1)) * ((1 << g) - 1);
    check(static_cast<int>(thetas.size()) == total, "census size at g=" + std::to_string(g));
    check(odd == want_odd, "odd count " + std::to_string(odd) + " at g=" + std::to_string(g));
    for (std::size_t i = 0; i < thetas.size(); ++i)
      for (std::size_t j = i + 1; j < thetas.size(); ++j)
        check(!class_eq(thetas[i].cls, thetas[j].cls), "duplicate classes at g=" + std::to_string(g));
  }
  return o;
}

Outcome embedding() {
  Outcome o;
  Check check{o};
  auto x = w0_supercurve();
  auto m = build_model(x, 5);
  check(m.ambient == (RankPair{4, 4}), "ambient " + m.ambient.to_string());
  auto report = verify_embedding(m, 200, 1);
  check(report.ok() && report.pairs_checked == 200, "nu=5 verification");

  auto forced = build_model(x, 4, true);
  auto bad = verify_embedding(forced, 20, 1);
  auto va = very_ample_check(x, 4);
  const ConditionCheck* f = va.failing();
  check(f != nullptr, "nu=4 has no failing condition");
  check(!bad.ok(), "forced nu=4 verified");
  if (f) {
    bool at_witness = false;
    for (const auto& fl : bad.failures) at_witness |= fl.p == f->witness[0] && fl.q == f->witness[1];
    check(at_witness, "forced nu=4 fails away from the witness");
  }
  return o;
}

Outcome algebra() {
  Outcome o;
  Check check{o};
  auto alg = make_algebra({"η1", "η2", "η3", "η4"});
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    std::size_t n = i % 2 == 0 ? 1 : 2;
    auto m = testing::random_supermatrix(rng, alg, n, n);
    auto k = testing::random_supermatrix(rng, alg, n, n);
    check(berezinian(m * k) == berezinian(m) * berezinian(k), "Ber multiplicativity, sample " + std::to_string(i));
  }

  Rng mob(41);
  for (int i = 0; i < 20; ++i) {
    Rational a = mob.nonzero_rational(), b = mob.rational(), c = mob.nonzero_rational();
    auto tr = mobius_transition(a, b, c, (1 + b * c) / a);
    auto rep = verify_lemma_2_2(tr);
    check(tr.psi * tr.psi == tr.phi.derivative(), "psi^2 != phi' on transition " + std::to_string(i));
    check(rep.ok(), "transition " + std::to_string(i));
  }
  check(verify_lemma_2_2(), "reference transitions");

  auto th = make_algebra({"θ"});
  auto d = VectorFieldSC::superconformal_generator(th);
  check(susy_generator_square(d) == VectorFieldSC::d_z(th), "D^2 != dz");
  check(bracket(d, d).scaled(GrassmannElement(th, RationalFunction(Rational(1, 2)))) == VectorFieldSC::d_z(th),
        "[D,D]/2 != dz");
  return o;
}

Outcome superpoint() {
  Outcome o;
  Check check{o};
  for (int g : {2, 3}) {
    auto x = even_supercurve(g);
    for (int nu : {3, 4}) {
      auto split = pluri_canonical_rank(x, nu).rank;
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto fam = random_superpoint_family(x, seed);
        auto r = pushforward_over_superpoint(fam, nu);
        std::string where = cell(g, nu) + " seed " + std::to_string(seed);
        check(cochain_is_regular(fam), where + " cochain");
        check(r.free, where + " not free");
        check(r.rank == split && r.split_rank == split, where + " rank " + r.rank.to_string());
      }
    }
  }
  return o;
}

Outcome moduli_and_duality() {
  Outcome o;
  Check check{o};
  for (int g = 2; g <= 6; ++g) {
    auto m = moduli_dimension(g);
    // Riemann-Roch: h1(-K) = 3g-3, h1(-L) = 2g-2 for deg L = g-1
    check(m.dims == (RankPair{3 * g - 3, 2 * g - 2}), "g=" + std::to_string(g) + " dims " + m.dims.to_string());
  }
  for (int g : {2, 3})
    for (const auto& t : theta_characteristics(HyperellipticCurve::standard_model(g))) {
      auto x = make_split_supercurve(t);
      check(x.susy && is_autodual(x), "theta not autodual at g=" + std::to_string(g));
    }
  Rng rng(42);
  int non_theta = 0;
  for (const auto& c : {testing::pointed_g2(), testing::pointed_g3()}) {
    auto pool = testing::support_pool(c);
    int found = 0;
    for (int tries = 0; found < 10 && tries < 500; ++tries) {
      auto x = make_split_supercurve(c, DivisorClass(c, testing::random_divisor(rng, pool, c.genus() - 1)));
      bool theta = is_principal(c, 2 * x.L.representative() - canonical_divisor(c));
      check(theta == x.susy, "susy flag disagrees with 2L ~ K");
      check(is_autodual(x) == theta, "autodual disagrees with 2L ~ K");
      if (!theta) ++found;
    }
    non_theta += found;
  }
  check(non_theta == 20, "found " + std::to_string(non_theta) + " non-theta classes");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, "canonical bundle rank 0|g on even thetas", 1, canonical_demo},
      {2, "derived rank slot matches (nu-1)g-nu+1", 10, rank_slot},
      {3, "very-ampleness threshold table", 30, thresholds},
      {4, "theta characteristic censuses", 60, census},
      {5, "genus-2 embedding at nu=5, failure at nu=4", 60, embedding},
      {6, "Berezinian, transitions, D^2 = dz", 60, algebra},
      {7, "pushforward over a superpoint is free", 120, superpoint},
      {8, "moduli dimensions and autoduality", 60, moduli_and_duality},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.budget) o = {false, "over time budget of " + std::to_string(static_cast<int>(c.budget)) + " s"};
    std::printf("%s %d %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.ok ? "" : ": ",
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
