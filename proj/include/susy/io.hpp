#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "susy/expr_parser.hpp"
#include "susy/pluricanonical.hpp"

namespace susy::io {

using Json = nlohmann::ordered_json;

inline Json rational_json(const Rational& r) { return to_string(r); }

inline Rational rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError("expected a rational string \"p/q\"");
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

// --- curves and points ------------------------------------------------------------

inline Json to_json(const HyperellipticCurve& c) {
  Json coeffs = Json::array();
  for (const auto& v : c.f().coeffs()) coeffs.push_back(rational_json(v));
  return Json{{"f_coeffs", coeffs}};
}

inline HyperellipticCurve curve_from(const Json& j) {
  if (!j.is_object() || !j.contains("f_coeffs") || !j["f_coeffs"].is_array())
    throw InputError("curve: expected {\"f_coeffs\": [...]}");
  std::vector<Rational> coeffs;
  for (const auto& v : j["f_coeffs"]) coeffs.push_back(rational_from(v));
  return HyperellipticCurve(coeffs);
}

inline Json to_json(const CurvePoint& p) {
  if (p.is_infinity()) return Json{{"inf", true}};
  if (p.y().is_rational()) return Json{{"x", rational_json(p.x())}, {"y", rational_json(p.y().rational_part())}};
  return Json{{"x", rational_json(p.x())},
              {"y_in_ext", {rational_json(p.y().rational_part()), rational_json(p.y().radical_part())}}};
}

/// y_in_ext [u, v] means u + v sqrt(f(x)).
inline CurvePoint point_from(const HyperellipticCurve& c, const Json& j) {
  if (!j.is_object()) throw InputError("point: expected an object");
  if (j.value("inf", false)) return CurvePoint::infinity();
  if (!j.contains("x")) throw InputError("point: missing x");
  Rational x = rational_from(j["x"]);
  if (j.contains("y")) return CurvePoint::affine(c, x, QuadNum(rational_from(j["y"])));
  if (j.contains("y_in_ext")) {
    const auto& e = j["y_in_ext"];
    if (!e.is_array() || e.size() != 2) throw InputError("point: y_in_ext must be [u, v]");
    Rational u = rational_from(e[0]), v = rational_from(e[1]);
    Rational fx = c.f()(x);
    Rational root;
    if (v == 0 || fx == 0) return CurvePoint::affine(c, x, QuadNum(u));
    if (is_rational_square(fx, &root)) return CurvePoint::affine(c, x, QuadNum(Rational(u + v * root)));
    return CurvePoint::affine(c, x, QuadNum(u, v, fx));
  }
  throw InputError("point: missing y or y_in_ext");
}

inline Json to_json(const Divisor& d) {
  Json arr = Json::array();
  for (const auto& [p, m] : d.terms()) arr.push_back(Json{{"point", to_json(p)}, {"multiplicity", m}});
  return arr;
}

inline Divisor divisor_from(const HyperellipticCurve& c, const Json& j) {
  if (!j.is_array()) throw InputError("divisor: expected a list of {point, multiplicity}");
  Divisor d;
  for (const auto& t : j) {
    if (!t.contains("point") || !t.contains("multiplicity") || !t["multiplicity"].is_number_integer())
      throw InputError("divisor: each entry needs point and integer multiplicity");
    d.add(point_from(c, t["point"]), t["multiplicity"].get<int>());
  }
  return d;
}

// --- functions ---------------------------------------------------------------------

struct FunctionFieldOps {
  HyperellipticCurve curve;
  FunctionFieldElement number(const Rational& r) const { return FunctionFieldElement::constant(curve, r); }
  FunctionFieldElement identifier(const std::string& name) const {
    if (name == "x") return FunctionFieldElement::x(curve);
    if (name == "y") return FunctionFieldElement::y(curve);
    throw InputError("unknown symbol in function: " + name);
  }
  FunctionFieldElement divide(const FunctionFieldElement& a, const FunctionFieldElement& b) const { return a / b; }
};

inline FunctionFieldElement function_from(const HyperellipticCurve& c, const std::string& text) {
  return parse_expression<FunctionFieldElement>(text, FunctionFieldOps{c});
}

/// Grassmann expressions over an algebra; identifiers are the even variable or a run
/// of generator names (e.g. "θη1"), split greedily.
struct GrassmannOps {
  AlgebraPtr alg;
  GrassmannElement number(const Rational& r) const { return GrassmannElement(alg, RationalFunction(r)); }
  GrassmannElement identifier(const std::string& name) const {
    if (name == alg->even_variable()) return GrassmannElement::even_variable(alg);
    GrassmannElement out(alg, RationalFunction(1));
    std::size_t pos = 0;
    while (pos < name.size()) {
      std::size_t best = 0;
      std::size_t idx = 0;
      for (std::size_t i = 0; i < alg->size(); ++i) {
        const auto& g = alg->generators()[i];
        if (g.size() > best && name.compare(pos, g.size(), g) == 0) {
          best = g.size();
          idx = i;
        }
      }
      if (best == 0) throw InputError("unknown symbol in Grassmann expression: " + name);
      out = out * GrassmannElement::generator(alg, idx);
      pos += best;
    }
    return out;
  }
  GrassmannElement divide(const GrassmannElement& a, const GrassmannElement& b) const { return a * b.inverse(); }
};

inline GrassmannElement grassmann_from(const AlgebraPtr& alg, const std::string& text) {
  return parse_expression<GrassmannElement>(text, GrassmannOps{alg});
}

// --- supercurves, models ------------------------------------------------------------

/// "even" / "odd", {"subset": [...]}, or a divisor list.
inline SplitSupercurve supercurve_from(const HyperellipticCurve& c, const Json& l) {
  if (l.is_string()) {
    std::string s = l.get<std::string>();
    if (s == "even") return make_split_supercurve(first_theta(c, ThetaParity::Even));
    if (s == "odd") return make_split_supercurve(first_theta(c, ThetaParity::Odd));
    throw InputError("theta: expected \"even\", \"odd\" or {\"subset\": [...]}");
  }
  if (l.is_object() && l.contains("subset")) {
    if (!l["subset"].is_array()) throw InputError("theta: subset must be a list");
    std::vector<int> s;
    for (const auto& v : l["subset"]) {
      if (!v.is_number_integer()) throw InputError("theta: subset entries must be integers");
      s.push_back(v.get<int>());
    }
    return make_split_supercurve(make_theta(c, s));
  }
  if (l.is_array()) return make_split_supercurve(c, DivisorClass(c, divisor_from(c, l)));
  throw InputError("L: expected a theta subset or a divisor");
}

inline Json to_json(const RankPair& r) { return Json{{"even", r.even}, {"odd", r.odd}}; }

inline RankPair rank_from(const Json& j) {
  if (!j.is_object() || !j.contains("even") || !j.contains("odd")) throw InputError("expected {\"even\", \"odd\"}");
  return {j["even"].get<int>(), j["odd"].get<int>()};
}

inline Json to_json(const PluriCanonicalModel& m) {
  Json even = Json::array(), odd = Json::array();
  for (const auto& s : m.even_sections) even.push_back(s.to_string());
  for (const auto& s : m.odd_sections) odd.push_back(s.to_string());
  return Json{{"nu", m.nu},
              {"ambient", to_json(m.ambient)},
              {"even_sections", even},
              {"odd_sections", odd},
              {"cleared_divisors", {{"even", to_json(m.even_divisor)}, {"odd", to_json(m.odd_divisor)}}},
              {"curve", to_json(m.curve)}};
}

inline PluriCanonicalModel model_from(const Json& j) {
  for (const char* key : {"nu", "ambient", "even_sections", "odd_sections", "cleared_divisors", "curve"})
    if (!j.contains(key)) throw InputError(std::string("model: missing ") + key);
  HyperellipticCurve c = curve_from(j["curve"]);
  PluriCanonicalModel m{c, j["nu"].get<int>()};
  m.ambient = rank_from(j["ambient"]);
  for (const auto& s : j["even_sections"]) m.even_sections.push_back(function_from(c, s.get<std::string>()));
  for (const auto& s : j["odd_sections"]) m.odd_sections.push_back(function_from(c, s.get<std::string>()));
  m.even_divisor = divisor_from(c, j["cleared_divisors"]["even"]);
  m.odd_divisor = divisor_from(c, j["cleared_divisors"]["odd"]);
  if (static_cast<int>(m.even_sections.size()) != m.ambient.even + 1 ||
      static_cast<int>(m.odd_sections.size()) != m.ambient.odd)
    throw InputError("model: section counts do not match the ambient dimensions");
  return m;
}

// --- reports ---------------------------------------------------------------------

inline Json points_json(const std::vector<CurvePoint>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(to_json(p));
  return arr;
}

inline Json to_json(const EmbeddingReport& r) {
  Json fails = Json::array();
  for (const auto& f : r.failures) fails.push_back(Json{{"check", f.check}, {"p", to_json(f.p)}, {"q", to_json(f.q)}});
  return Json{{"pairs_checked", r.pairs_checked},
              {"points_checked", r.points_checked},
              {"point_separation", r.point_separation},
              {"tangent_separation", r.tangent_separation},
              {"odd_nondegeneracy", r.odd_nondegenerate},
              {"failures", fails},
              {"ok", r.ok()}};
}

inline Json to_json(const ThresholdCell& c) {
  Json j{{"g", c.g}, {"nu", c.nu}, {"hypotheses", c.hypotheses}, {"pass_all_thetas", c.pass_all},
         {"pass_even_thetas", c.pass_even}};
  if (c.witness) {
    j["witness"] = Json{{"theta", c.witness->theta},
                        {"condition", c.witness->condition},
                        {"points", points_json(c.witness->points)},
                        {"confirmed", c.witness->confirmed}};
  }
  return j;
}

inline std::string point_list(const std::vector<CurvePoint>& pts) {
  if (pts.size() == 2 && pts[0] == pts[1]) return "x=y=" + pts[0].to_string();
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ",";
    s += (pts.size() == 2 ? (i == 0 ? "x=" : "y=") : "x=") + pts[i].to_string();
  }
  return s;
}

}  // namespace susy::io
