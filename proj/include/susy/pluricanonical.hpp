#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "susy/supercurve.hpp"

namespace susy {

/// Representative of L^k with Weierstrass multiplicities reduced.
inline Divisor bundle_power(const SplitSupercurve& x, int k) {
  return reduce_weierstrass(k * x.L.representative());
}

// --- ranks ---------------------------------------------------------------------

struct RankReport {
  RankPair rank;
  bool hypotheses = false;  // h1(L^nu) = h1(L^(nu+1)) = 0
  int h0_nu = 0, h0_next = 0, h1_nu = 0, h1_next = 0;
  RankPair printed_formula;  // ((nu-1)g - nu + 1 | (2nu-1)g - 2nu + 1), swapped for odd nu
};

inline RankPair printed_rank_formula(int g, int nu) {
  RankPair p{(nu - 1) * g - nu + 1, (2 * nu - 1) * g - 2 * nu + 1};
  return nu % 2 == 0 ? p : p.swapped();
}

/// Rank of the pushforward of Ber^nu. Where h1 vanishes the pair follows the parity
/// of nu; otherwise the point-base value h0(L^nu) | h0(L^(nu+1)) is returned.
inline RankReport pluri_canonical_rank(const SplitSupercurve& x, int nu) {
  if (nu < 1) throw InputError("nu must be at least 1");
  const auto& c = x.curve;
  Divisor e = bundle_power(x, nu);
  Divisor el = bundle_power(x, nu + 1);
  RankReport r;
  r.h0_nu = h0(c, e);
  r.h0_next = h0(c, el);
  r.h1_nu = h1(c, e);
  r.h1_next = h1(c, el);
  r.hypotheses = r.h1_nu == 0 && r.h1_next == 0;
  RankPair base{r.h0_nu, r.h0_next};
  r.rank = (r.hypotheses && nu % 2 == 1) ? base.swapped() : base;
  r.printed_formula = printed_rank_formula(c.genus(), nu);
  return r;
}

struct LocalFreenessReport {
  bool locally_free = false;
  RankPair rank;
  int h0_e = 0, h0_el = 0, h1_e = 0, h1_el = 0;
};

/// Both h1(E) and h1(E + L) must vanish; the rank pair is ordered by the parity of E.
inline LocalFreenessReport criterion_local_freeness(const SplitSupercurve& x, const DivisorClass& e, Parity e_parity) {
  const auto& c = x.curve;
  Divisor de = e.representative();
  Divisor del = de + x.L.representative();
  LocalFreenessReport r;
  r.h0_e = h0(c, de);
  r.h0_el = h0(c, del);
  r.h1_e = h1(c, de);
  r.h1_el = h1(c, del);
  r.locally_free = r.h1_e == 0 && r.h1_el == 0;
  RankPair p{r.h0_e, r.h0_el};
  r.rank = e_parity == Parity::Even ? p : p.swapped();
  return r;
}

// --- very ampleness ---------------------------------------------------------------

/// Whether h1(F - x_1 - ... - x_k) = 0 for all points, i.e. K - F + sum x_i is never
/// effective. On failure `witness` holds the points.
struct ConditionCheck {
  bool holds = true;
  int points = 0;
  Divisor bundle;  // F
  int slack = 0;   // deg(K - F) + points
  std::vector<CurvePoint> witness;
  std::string decided_by;  // "degree", "witness", "boundary"
};

namespace detail {

inline std::vector<CurvePoint> witness_candidates(const HyperellipticCurve& c, const Divisor& f) {
  std::vector<CurvePoint> pts{CurvePoint::infinity()};
  for (const auto& w : finite_weierstrass_points(c)) pts.push_back(w);
  for (const auto& [p, m] : f.terms())
    if (std::find(pts.begin(), pts.end(), p) == pts.end() && p.is_rational()) pts.push_back(p);
  return pts;
}

inline Divisor sum_of(const std::vector<CurvePoint>& pts) {
  Divisor d;
  for (const auto& p : pts) d.add(p, 1);
  return d;
}

/// Points of an effective divisor, with multiplicity.
inline std::vector<CurvePoint> points_of(const Divisor& d) {
  std::vector<CurvePoint> out;
  for (const auto& [p, m] : d.terms())
    for (int i = 0; i < m; ++i) out.push_back(p);
  return out;
}

}  // namespace detail

inline ConditionCheck check_condition(const HyperellipticCurve& c, const Divisor& f, int k) {
  ConditionCheck r;
  r.points = k;
  r.bundle = f;
  const Divisor g = canonical_divisor(c) - f;
  r.slack = g.degree() + k;
  if (r.slack < 0) {
    r.decided_by = "degree";
    return r;
  }
  const auto cands = detail::witness_candidates(c, f);
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  // nondecreasing index tuples
  while (true) {
    std::vector<CurvePoint> pts;
    for (auto i : idx) pts.push_back(cands[i]);
    if (h0(c, g + detail::sum_of(pts)) >= 1) {
      r.holds = false;
      r.witness = pts;
      r.decided_by = "witness";
      return r;
    }
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] + 1 == cands.size()) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(pos)];
  }
  if (r.slack == 0) {
    // K - F + D ~ 0 needs D in |F - K|
    r.decided_by = "boundary";
    const Divisor fk = f - canonical_divisor(c);
    for (const auto& s : rr_space(c, fk)) {
      try {
        Divisor eff = divisor_of(s) + fk;
        r.holds = false;
        r.witness = detail::points_of(eff);
        return r;
      } catch (const DomainError&) {
        continue;
      }
    }
    if (h0(c, fk) >= 1) throw DomainError("very ampleness: witness divisor has irrational support");
    return r;
  }
  throw DomainError("very ampleness undecided: no witness among Weierstrass and support points");
}

struct VeryAmpleResult {
  bool hypotheses = false;
  bool very_ample = false;
  ConditionCheck pair_condition;   // F = L^nu, two points
  ConditionCheck point_condition;  // F = L^(nu+1) (nu even) or L^nu (nu odd), one point
  const ConditionCheck* failing() const {
    if (!pair_condition.holds) return &pair_condition;
    if (!point_condition.holds) return &point_condition;
    return nullptr;
  }
};

/// Both conditions, without requiring the local-freeness hypotheses.
inline VeryAmpleResult very_ample_conditions(const SplitSupercurve& x, int nu) {
  if (nu < 1) throw InputError("nu must be at least 1");
  VeryAmpleResult r;
  r.hypotheses = pluri_canonical_rank(x, nu).hypotheses;
  r.pair_condition = check_condition(x.curve, bundle_power(x, nu), 2);
  r.point_condition = check_condition(x.curve, bundle_power(x, nu % 2 == 0 ? nu + 1 : nu), 1);
  r.very_ample = r.hypotheses && r.pair_condition.holds && r.point_condition.holds;
  return r;
}

inline VeryAmpleResult very_ample_check(const SplitSupercurve& x, int nu) {
  VeryAmpleResult r = very_ample_conditions(x, nu);
  if (!r.hypotheses) throw DomainError("very_ample_check: local-freeness hypotheses fail at nu = " + std::to_string(nu));
  return r;
}

/// True when both conditions hold by degree alone, for every L of degree g - 1.
inline bool very_ample_by_degree(int g, int nu) {
  const int deg_pair = 2 * g - 2 - nu * (g - 1) + 2;
  const int f2 = nu % 2 == 0 ? nu + 1 : nu;
  const int deg_point = 2 * g - 2 - f2 * (g - 1) + 1;
  return nu >= 3 && deg_pair < 0 && deg_point < 0;
}

// --- threshold table --------------------------------------------------------------

struct ThresholdWitness {
  std::vector<int> theta;          // subset of the failing theta
  int condition = 1;               // 1: pair condition, 2: point condition
  std::vector<CurvePoint> points;
  Divisor bundle;
  bool confirmed = false;          // h0(K - F + sum points) >= 1 on an unreduced representative
};

struct ThresholdCell {
  int g = 0;
  int nu = 0;
  bool hypotheses = false;
  bool pass_all = false;   // every theta characteristic
  bool pass_even = false;  // every even theta characteristic with h0 = 0
  std::optional<ThresholdWitness> witness;
};

namespace detail {

inline ThresholdWitness make_witness(const SplitSupercurve& x, const ThetaCharacteristic& t, int nu,
                                     const VeryAmpleResult& r) {
  const ConditionCheck* f = r.failing();
  ThresholdWitness w;
  w.theta = t.subset;
  w.condition = f == &r.pair_condition ? 1 : 2;
  w.points = f->witness;
  w.bundle = f->bundle;
  int power = w.condition == 1 ? nu : (nu % 2 == 0 ? nu + 1 : nu);
  Divisor raw = canonical_divisor(x.curve) - power * x.L.representative() + sum_of(w.points);
  w.confirmed = h0(x.curve, raw) >= 1;
  return w;
}

}  // namespace detail

inline ThresholdCell threshold_cell(int g, int nu) {
  auto c = HyperellipticCurve::standard_model(g);
  ThresholdCell cell{g, nu};
  auto first = first_theta(c, ThetaParity::Even);
  SplitSupercurve x0 = make_split_supercurve(first);
  cell.hypotheses = pluri_canonical_rank(x0, nu).hypotheses;
  if (!cell.hypotheses) {
    VeryAmpleResult r = very_ample_conditions(x0, nu);
    if (r.failing()) cell.witness = detail::make_witness(x0, first, nu, r);
    return cell;
  }
  if (very_ample_by_degree(g, nu)) {
    cell.pass_all = cell.pass_even = true;
    return cell;
  }
  cell.pass_all = cell.pass_even = true;
  for (const auto& t : theta_characteristics(c)) {
    SplitSupercurve x = make_split_supercurve(t);
    VeryAmpleResult r = very_ample_check(x, nu);
    if (r.very_ample) continue;
    cell.pass_all = false;
    if (t.parity() == ThetaParity::Even && t.h0 == 0) cell.pass_even = false;
    if (!cell.witness) cell.witness = detail::make_witness(x, t, nu, r);
  }
  return cell;
}

/// Cells for 2 <= g <= g_max, 1 <= nu <= nu_max, row-major in g. The parallel path
/// evaluates cells concurrently and returns the same vector.
inline std::vector<ThresholdCell> threshold_table(int g_max, int nu_max, bool parallel = false) {
  if (g_max < 2 || nu_max < 1) throw InputError("threshold_table: need g_max >= 2 and nu_max >= 1");
  std::vector<std::pair<int, int>> keys;
  for (int g = 2; g <= g_max; ++g)
    for (int nu = 1; nu <= nu_max; ++nu) keys.emplace_back(g, nu);
  std::vector<ThresholdCell> out;
  if (!parallel) {
    for (auto [g, nu] : keys) out.push_back(threshold_cell(g, nu));
    return out;
  }
  std::vector<std::future<ThresholdCell>> jobs;
  for (auto [g, nu] : keys) jobs.push_back(std::async(std::launch::async, threshold_cell, g, nu));
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

/// Smallest nu at which Ber^nu is relatively very ample for every theta characteristic.
inline int minimal_nu(int g, int nu_cap = 12) {
  if (g < 2) throw InputError("minimal_nu needs g >= 2");
  for (int nu = 1; nu <= nu_cap; ++nu) {
    ThresholdCell cell = threshold_cell(g, nu);
    if (cell.hypotheses && cell.pass_all) return nu;
  }
  throw DomainError("minimal_nu: no threshold below the cap");
}

/// Same for one given supercurve.
inline int minimal_nu(const SplitSupercurve& x, int nu_cap = 12) {
  for (int nu = 1; nu <= nu_cap; ++nu)
    if (very_ample_conditions(x, nu).very_ample) return nu;
  throw DomainError("minimal_nu: no threshold below the cap");
}

// --- models ---------------------------------------------------------------------

struct PluriCanonicalModel {
  HyperellipticCurve curve;
  int nu = 0;
  RankPair ambient;  // projective dimensions p - 1 | q
  std::vector<FunctionFieldElement> even_sections;
  std::vector<FunctionFieldElement> odd_sections;
  Divisor even_divisor;
  Divisor odd_divisor;
};

inline bool operator==(const PluriCanonicalModel& a, const PluriCanonicalModel& b) {
  return a.curve == b.curve && a.nu == b.nu && a.ambient == b.ambient && a.even_sections == b.even_sections &&
         a.odd_sections == b.odd_sections && a.even_divisor == b.even_divisor && a.odd_divisor == b.odd_divisor;
}

/// Section bases of L^nu and L^(nu+1), assigned to the even and odd summands by the
/// parity of nu. `force` skips the very-ampleness check.
inline PluriCanonicalModel build_model(const SplitSupercurve& x, int nu, bool force = false) {
  if (nu < 1) throw InputError("nu must be at least 1");
  if (!force) {
    VeryAmpleResult r = very_ample_conditions(x, nu);
    if (!r.very_ample) {
      std::string why = !r.hypotheses ? "hypotheses fail" : "witness";
      if (const auto* f = r.failing()) {
        why += ":";
        for (const auto& p : f->witness) why += " " + p.to_string();
      }
      throw DomainError("build_model: Ber^" + std::to_string(nu) + " is not very ample (" + why + ")");
    }
  }
  PluriCanonicalModel m{x.curve, nu};
  Divisor e = bundle_power(x, nu);
  Divisor el = bundle_power(x, nu + 1);
  m.even_divisor = nu % 2 == 0 ? e : el;
  m.odd_divisor = nu % 2 == 0 ? el : e;
  m.even_sections = rr_space(x.curve, m.even_divisor);
  m.odd_sections = rr_space(x.curve, m.odd_divisor);
  m.ambient = {static_cast<int>(m.even_sections.size()) - 1, static_cast<int>(m.odd_sections.size())};
  return m;
}

// --- embedding verification -----------------------------------------------------------

/// Values and first derivatives of s * t^m at p, m the multiplicity of p in D.
struct SectionJet {
  std::vector<QuadNum> value;
  std::vector<QuadNum> derivative;
};

inline SectionJet section_jet(const std::vector<FunctionFieldElement>& sections, const Divisor& d, const CurvePoint& p) {
  const int m = d.multiplicity(p);
  const int need = -m + 2;
  SectionJet j;
  if (sections.empty()) return j;
  const auto& c = sections.front().curve();
  int work = std::max(8, 2 * std::abs(m) + 8);
  for (int attempt = 0; attempt < 12; ++attempt, work *= 2) {
    LocalExpansion e = local_expansion(c, p, work);
    j.value.clear();
    j.derivative.clear();
    bool enough = true;
    for (const auto& s : sections) {
      auto den = e.x.compose_into(s.den());
      if (!den.valuation()) {
        enough = false;
        break;
      }
      auto ser = numerator_series(s.a(), s.b(), e) * den.inverse();
      if (ser.precision() < need) {
        enough = false;
        break;
      }
      if (auto v = ser.valuation(); v && *v < -m) throw DomainError("section_jet: section has a pole beyond its divisor");
      j.value.push_back(ser.coeff(-m));
      j.derivative.push_back(ser.coeff(-m + 1));
    }
    if (enough) return j;
  }
  throw DomainError("section_jet: precision could not be reached");
}

namespace detail {

inline bool rows_independent(const std::vector<QuadNum>& u, const std::vector<QuadNum>& w) {
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t k = i + 1; k < u.size(); ++k)
      if (!cross_difference_is_zero(u[i], w[k], u[k], w[i])) return true;
  return false;
}

inline bool nonzero(const std::vector<QuadNum>& v) {
  return std::any_of(v.begin(), v.end(), [](const QuadNum& q) { return !q.is_zero(); });
}

}  // namespace detail

struct EmbeddingFailure {
  std::string check;  // "point_separation", "tangent_separation", "odd_nondegeneracy"
  CurvePoint p;
  CurvePoint q;
};

struct EmbeddingReport {
  int pairs_checked = 0;
  int points_checked = 0;
  bool point_separation = true;
  bool tangent_separation = true;
  bool odd_nondegenerate = true;
  std::vector<EmbeddingFailure> failures;  // first failure of each kind
  bool ok() const { return point_separation && tangent_separation && odd_nondegenerate; }
};

/// Checks explicit pairs; a pair (P, P) is a tangent check at P.
inline EmbeddingReport verify_embedding(const PluriCanonicalModel& m,
                                        const std::vector<std::pair<CurvePoint, CurvePoint>>& pairs) {
  EmbeddingReport r;
  std::vector<std::pair<CurvePoint, SectionJet>> even_cache;
  auto jet = [&](const CurvePoint& p) -> const SectionJet& {
    for (const auto& [q, j] : even_cache)
      if (q == p) return j;
    even_cache.emplace_back(p, section_jet(m.even_sections, m.even_divisor, p));
    return even_cache.back().second;
  };
  std::vector<CurvePoint> seen;
  auto point_checks = [&](const CurvePoint& p) {
    if (std::find(seen.begin(), seen.end(), p) != seen.end()) return;
    seen.push_back(p);
    ++r.points_checked;
    const SectionJet& j = jet(p);
    if (!detail::rows_independent(j.value, j.derivative) && r.tangent_separation) {
      r.tangent_separation = false;
      r.failures.push_back({"tangent_separation", p, p});
    }
    SectionJet odd = section_jet(m.odd_sections, m.odd_divisor, p);
    if (!detail::nonzero(odd.value) && r.odd_nondegenerate) {
      r.odd_nondegenerate = false;
      r.failures.push_back({"odd_nondegeneracy", p, p});
    }
  };
  for (const auto& [p, q] : pairs) {
    point_checks(p);
    point_checks(q);
    if (p == q) continue;
    ++r.pairs_checked;
    const SectionJet jp = jet(p);
    const SectionJet& jq = jet(q);
    if (!detail::rows_independent(jp.value, jq.value) && r.point_separation) {
      r.point_separation = false;
      r.failures.push_back({"point_separation", p, q});
    }
  }
  return r;
}

/// Sample points: infinity, the finite Weierstrass points and random (p/q, +-sqrt f)
/// with y exact in a quadratic extension.
inline std::vector<CurvePoint> sample_points(const HyperellipticCurve& c, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CurvePoint> pts{CurvePoint::infinity()};
  for (const auto& w : finite_weierstrass_points(c)) pts.push_back(w);
  while (static_cast<int>(pts.size()) < count) {
    long num = static_cast<long>(rng() % 101) - 50;
    long den = static_cast<long>(rng() % 9) + 1;
    Rational x(num, den);
    x.canonicalize();
    if (c.f()(x) == 0) continue;
    CurvePoint p = CurvePoint::above(c, x, rng() % 2 ? 1 : -1);
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  return pts;
}

/// `pair_count` random pairs of distinct sample points, plus tangent and odd checks at
/// every point used.
inline EmbeddingReport verify_embedding(const PluriCanonicalModel& m, int pair_count, std::uint64_t seed) {
  const int pool = std::max(12, pair_count / 4);
  auto pts = sample_points(m.curve, pool, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::pair<CurvePoint, CurvePoint>> pairs;
  for (const auto& p : pts) pairs.emplace_back(p, p);
  while (static_cast<int>(pairs.size()) < pair_count + static_cast<int>(pts.size())) {
    std::size_t i = rng() % pts.size();
    std::size_t k = rng() % pts.size();
    if (i == k) continue;
    pairs.emplace_back(pts[i], pts[k]);
  }
  return verify_embedding(m, pairs);
}

// --- superpoint families ------------------------------------------------------------

/// First-order family over a 0|1 superpoint: the transition of the bundle between the
/// charts C - {infinity} and C - {W} is twisted by (1 + eta theta h).
struct SuperPointFamily {
  SplitSupercurve fiber;
  CurvePoint chart_point;  // W
  std::optional<FunctionFieldElement> cochain;
};

/// h may have poles at infinity and W beyond those L allows.
inline Divisor cochain_divisor(const SplitSupercurve& x, const CurvePoint& w) {
  return x.L.representative() + Divisor::point(CurvePoint::infinity(), 2) + Divisor::point(w, 2);
}

inline bool cochain_is_regular(const SuperPointFamily& f) {
  if (!f.cochain) return true;
  const auto& h = *f.cochain;
  if (h.is_zero()) return true;
  const Divisor& l = f.fiber.L.representative();
  std::vector<Rational> allowed{f.chart_point.x()};
  for (const auto& [p, m] : l.terms())
    if (!p.is_infinity()) allowed.push_back(p.x());
  if (!h.den().is_constant()) {
    for (const auto& r : rational_roots(h.den())) {
      if (std::find(allowed.begin(), allowed.end(), r) == allowed.end()) return false;
    }
    QPoly rest = h.den();
    for (const auto& r : rational_roots(h.den()))
      while (rest.order_at(r) > 0) rest = rest / QPoly::linear_factor(r);
    if (!rest.is_constant()) return false;
  }
  for (const auto& [p, m] : l.terms()) {
    if (p.is_infinity() || p == f.chart_point) continue;
    if (valuation(h, p) < -m) return false;
    if (!p.is_weierstrass() && valuation(h, p.conjugate()) < -l.multiplicity(p.conjugate())) return false;
  }
  return true;
}

inline SuperPointFamily random_superpoint_family(const SplitSupercurve& x, std::uint64_t seed) {
  CurvePoint w = finite_weierstrass_points(x.curve).front();
  auto basis = rr_space(x.curve, cochain_divisor(x, w));
  std::mt19937_64 rng(seed);
  FunctionFieldElement h = FunctionFieldElement::constant(x.curve, 0);
  while (h.is_zero()) {
    for (const auto& b : basis) h = h + b.scaled(Rational(static_cast<long>(rng() % 11) - 5));
  }
  return {x, w, h};
}

struct PushforwardResult {
  bool free = false;
  RankPair rank;        // body ranks ordered by the parity of nu
  RankPair split_rank;  // h0(L^nu), h0(L^(nu+1)) ordered the same way
  int a_rank = 0;       // body sections of the L^nu piece that lift
  int b_rank = 0;       // body sections of the L^(nu+1) piece
  int c_rank = 0;       // eta-components in the L^nu piece
  std::size_t kernel_dim = 0;
  int bound = 0;        // pole truncation N
};

namespace detail {

struct LinearTerm {
  std::size_t column;
  FunctionFieldElement fn;
};

/// Rows stating sum_t column_t * fn_t = 0 as an identity in the function field.
inline void append_function_equation(const std::vector<LinearTerm>& terms, std::size_t ncols, Matrix<Rational>& m) {
  if (terms.empty()) return;
  QPoly common(Rational(1));
  for (const auto& t : terms) common = common * t.fn.den() / gcd(common, t.fn.den());
  std::vector<std::pair<QPoly, QPoly>> cleared;
  int top = 0;
  for (const auto& t : terms) {
    QPoly mult = common / t.fn.den();
    cleared.emplace_back(t.fn.a() * mult, t.fn.b() * mult);
    top = std::max({top, cleared.back().first.degree(), cleared.back().second.degree()});
  }
  for (int part = 0; part < 2; ++part) {
    for (int k = 0; k <= top; ++k) {
      std::vector<Rational> row(ncols, Rational(0));
      bool any = false;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const QPoly& p = part == 0 ? cleared[i].first : cleared[i].second;
        Rational v = p.coeff(static_cast<std::size_t>(k));
        if (v == 0) continue;
        row[terms[i].column] += v;
        any = true;
      }
      if (any) m.append_row(row);
    }
  }
}

struct ChartSolve {
  int a_rank = 0, b_rank = 0, c_rank = 0;
  std::size_t kernel_dim = 0;
  friend bool operator==(const ChartSolve&, const ChartSolve&) = default;
};

/// Sections u with u_1 = u_0 on the overlap (u_0 in L(D + N inf), u_1 in L(D + N W)):
/// returns the rank of the chart-0 projection.
inline std::pair<int, std::size_t> glue_untwisted(const HyperellipticCurve& c, const Divisor& d, const CurvePoint& w,
                                                  int n) {
  auto u0 = rr_space(c, d + Divisor::point(CurvePoint::infinity(), n));
  auto u1 = rr_space(c, d + Divisor::point(w, n));
  const std::size_t nc = u0.size() + u1.size();
  std::vector<LinearTerm> eq;
  for (std::size_t i = 0; i < u0.size(); ++i) eq.push_back({i, -u0[i]});
  for (std::size_t i = 0; i < u1.size(); ++i) eq.push_back({u0.size() + i, u1[i]});
  Matrix<Rational> m;
  append_function_equation(eq, nc, m);
  auto ker = kernel(std::move(m), nc);
  return {static_cast<int>(projected_rank(ker, 0, u0.size())), ker.size()};
}

inline ChartSolve solve_charts(const SuperPointFamily& fam, const Divisor& de, const Divisor& del, int n) {
  const auto& c = fam.fiber.curve;
  const auto& w = fam.chart_point;
  const auto inf_n = Divisor::point(CurvePoint::infinity(), n);
  const auto w_n = Divisor::point(w, n);
  ChartSolve s;
  // b and c decouple from the twist
  auto [b_rank, b_dim] = glue_untwisted(c, del, w, n);
  auto [c_rank, c_dim] = glue_untwisted(c, de, w, n);
  s.b_rank = b_rank;
  s.c_rank = c_rank;

  auto a0 = rr_space(c, de + inf_n);
  auto a1 = rr_space(c, de + w_n);
  auto d0 = rr_space(c, del + inf_n);
  auto d1 = rr_space(c, del + w_n);
  const std::size_t oa1 = a0.size(), od0 = oa1 + a1.size(), od1 = od0 + d0.size(), nc = od1 + d1.size();
  Matrix<Rational> m;
  std::vector<LinearTerm> eq_a, eq_d;
  for (std::size_t i = 0; i < a0.size(); ++i) eq_a.push_back({i, -a0[i]});
  for (std::size_t i = 0; i < a1.size(); ++i) eq_a.push_back({oa1 + i, a1[i]});
  for (std::size_t i = 0; i < d0.size(); ++i) eq_d.push_back({od0 + i, -d0[i]});
  for (std::size_t i = 0; i < d1.size(); ++i) eq_d.push_back({od1 + i, d1[i]});
  if (fam.cochain && !fam.cochain->is_zero())
    for (std::size_t i = 0; i < a0.size(); ++i) eq_d.push_back({i, -(*fam.cochain * a0[i])});
  append_function_equation(eq_a, nc, m);
  append_function_equation(eq_d, nc, m);
  auto ker = kernel(std::move(m), nc);
  s.a_rank = static_cast<int>(projected_rank(ker, 0, a0.size()));
  s.kernel_dim = ker.size() + b_dim + c_dim;
  return s;
}

inline int pole_order(const FunctionFieldElement& h, const CurvePoint& p) { return std::max(0, -valuation(h, p)); }

}  // namespace detail

/// Global sections of the twisted bundle over Lambda[eta] by two-chart gluing. The
/// module is free iff every body section lifts.
inline PushforwardResult pushforward_over_superpoint(const SuperPointFamily& fam, int nu, bool override_hypotheses = false) {
  if (nu < 1) throw InputError("nu must be at least 1");
  if (!fam.chart_point.is_weierstrass() || fam.chart_point.is_infinity())
    throw InputError("chart point must be a finite Weierstrass point");
  if (!cochain_is_regular(fam)) throw DomainError("deformation cochain is not regular on the chart overlap");
  RankReport split = pluri_canonical_rank(fam.fiber, nu);
  if (!split.hypotheses && !override_hypotheses)
    throw DomainError("pushforward_over_superpoint: hypotheses fail at nu = " + std::to_string(nu));

  const auto& c = fam.fiber.curve;
  Divisor de = bundle_power(fam.fiber, nu);
  Divisor del = de + fam.fiber.L.representative();
  int poles = 0;
  if (fam.cochain && !fam.cochain->is_zero())
    poles = detail::pole_order(*fam.cochain, CurvePoint::infinity()) + detail::pole_order(*fam.cochain, fam.chart_point);
  const int n = std::max(0, del.degree()) + 2 * c.genus() + 2 + poles;

  detail::ChartSolve s = detail::solve_charts(fam, de, del, n);
  if (!(detail::solve_charts(fam, de, del, 2 * n) == s))
    throw DomainError("pushforward_over_superpoint: truncation bound exceeded");

  PushforwardResult r;
  r.bound = n;
  r.a_rank = s.a_rank;
  r.b_rank = s.b_rank;
  r.c_rank = s.c_rank;
  r.kernel_dim = s.kernel_dim;
  const int h0e = h0(c, de), h0el = h0(c, del);
  r.free = s.a_rank == h0e && s.b_rank == h0el && s.c_rank == h0e;
  RankPair body{s.a_rank, s.b_rank};
  RankPair full{h0e, h0el};
  r.rank = nu % 2 == 0 ? body : body.swapped();
  r.split_rank = nu % 2 == 0 ? full : full.swapped();
  return r;
}

// --- the canonical bundle itself --------------------------------------------------

struct CanonicalDemo {
  RankPair rank;           // h0(L) | h0(L^2)
  bool even_theta = false;
  bool obstruction = false;  // a 1|1 curve cannot map to P^{-1|q}
};

inline CanonicalDemo canonical_nonembedding_demo(const SplitSupercurve& x) {
  if (!x.susy) throw InputError("canonical_nonembedding_demo needs a theta characteristic");
  CanonicalDemo d;
  d.rank = {h0(x.curve, x.L.representative()), h0(x.curve, bundle_power(x, 2))};
  d.even_theta = d.rank.even == 0;
  d.obstruction = d.even_theta;
  return d;
}

}  // namespace susy
