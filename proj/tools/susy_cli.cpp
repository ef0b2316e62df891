#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "susy/io.hpp"

namespace {

using susy::io::Json;

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct Config {
  int genus = 2;
  int nu = 3;
  std::string curve;
  std::string theta = "even";
  int samples = 100;
  std::uint64_t seed = 1;
  std::string format = "table";
  std::string out;
  std::string model;
  int g_max = 6;
  int nu_max = 6;
  bool parallel = false;
  bool force = false;
  bool override_hypotheses = false;
  std::string z_prime;
  std::string theta_prime;
  std::string odd_moduli;
};

susy::HyperellipticCurve load_curve(const Config& cfg) {
  if (!cfg.curve.empty()) return susy::io::curve_from(susy::io::read_json_file(cfg.curve));
  return susy::HyperellipticCurve::standard_model(cfg.genus);
}

susy::SplitSupercurve load_supercurve(const Config& cfg) {
  auto c = load_curve(cfg);
  if (cfg.theta == "even" || cfg.theta == "odd") return susy::io::supercurve_from(c, Json(cfg.theta));
  Json j;
  try {
    j = Json::parse(cfg.theta);
  } catch (const nlohmann::json::exception&) {
    throw susy::InputError("--theta: expected even, odd or JSON such as {\"subset\":[0]}");
  }
  return susy::io::supercurve_from(c, j);
}

void emit(const Config& cfg, const Json& j, const std::string& table) {
  if (!cfg.out.empty()) susy::io::write_json_file(cfg.out, j);
  if (cfg.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << table;
}

std::string subset_string(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

int cmd_rank(const Config& cfg) {
  auto x = load_supercurve(cfg);
  auto r = susy::pluri_canonical_rank(x, cfg.nu);
  std::ostringstream t;
  t << r.rank.to_string();
  if (!r.hypotheses) t << " (hypotheses fail; point-base value)";
  if (r.hypotheses && !(r.printed_formula == r.rank)) t << " (paper formula: " << r.printed_formula.to_string() << " — flagged)";
  t << "\n";
  Json j{{"genus", x.curve.genus()},
         {"nu", cfg.nu},
         {"rank", r.rank.to_string()},
         {"hypotheses", r.hypotheses},
         {"h0", {r.h0_nu, r.h0_next}},
         {"h1", {r.h1_nu, r.h1_next}},
         {"printed_formula", r.printed_formula.to_string()},
         {"printed_formula_matches", r.printed_formula == r.rank}};
  emit(cfg, j, t.str());
  return kOk;
}

std::string cell_text(const susy::ThresholdCell& c) {
  if (!c.hypotheses) return "FAIL(hyp)";
  if (c.pass_all) return "PASS";
  std::string w = c.witness ? " " + susy::io::point_list(c.witness->points) : "";
  if (c.pass_even) return "FAIL(all-thetas)/PASS(even-theta)" + w;
  return "FAIL" + w;
}

int cmd_thresholds(const Config& cfg) {
  auto cells = susy::threshold_table(cfg.g_max, cfg.nu_max, cfg.parallel);
  std::ostringstream t;
  Json arr = Json::array();
  for (const auto& c : cells) {
    t << "g=" << c.g << " nu=" << c.nu << "  " << cell_text(c) << "\n";
    arr.push_back(susy::io::to_json(c));
  }
  emit(cfg, Json{{"cells", arr}}, t.str());
  return kOk;
}

int cmd_theta_census(const Config& cfg) {
  auto c = load_curve(cfg);
  auto thetas = susy::theta_characteristics(c);
  int odd = 0;
  Json arr = Json::array();
  std::ostringstream list;
  for (const auto& th : thetas) {
    bool is_odd = th.parity() == susy::ThetaParity::Odd;
    odd += is_odd;
    arr.push_back(Json{{"subset", th.subset}, {"h0", th.h0}, {"parity", susy::to_string(th.parity())}});
    list << "  S=" << subset_string(th.subset) << "  h0=" << th.h0 << "  " << susy::to_string(th.parity()) << "\n";
  }
  const int n = static_cast<int>(thetas.size());
  std::ostringstream t;
  t << n << " classes: " << odd << " odd, " << n - odd << " even\n" << list.str();
  emit(cfg, Json{{"classes", n}, {"odd", odd}, {"even", n - odd}, {"thetas", arr}}, t.str());
  return kOk;
}

int cmd_embed(const Config& cfg) {
  auto x = load_supercurve(cfg);
  if (!cfg.force) {
    auto r = susy::very_ample_conditions(x, cfg.nu);
    if (!r.very_ample) {
      std::cerr << "Ber^" << cfg.nu << " is not relatively very ample";
      if (!r.hypotheses) std::cerr << " (local-freeness hypotheses fail)";
      if (const auto* f = r.failing()) std::cerr << "; witness " << susy::io::point_list(f->witness);
      std::cerr << "\n";
      return kCheckFailed;
    }
  }
  auto m = susy::build_model(x, cfg.nu, cfg.force);
  Json j = susy::io::to_json(m);
  if (!cfg.out.empty()) susy::io::write_json_file(cfg.out, j);
  if (cfg.format == "json" && cfg.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "P^{" << m.ambient.to_string() << "}: " << m.even_sections.size() << " even, " << m.odd_sections.size()
              << " odd sections\n";
  }
  return kOk;
}

int cmd_verify(const Config& cfg) {
  auto m = susy::io::model_from(susy::io::read_json_file(cfg.model));
  auto r = susy::verify_embedding(m, cfg.samples, cfg.seed);
  std::ostringstream t;
  if (r.ok()) {
    t << "all checks pass (" << r.pairs_checked << " pairs, " << r.points_checked << " points)\n";
  } else {
    for (const auto& f : r.failures) t << f.check << " fails at " << f.p.to_string() << ", " << f.q.to_string() << "\n";
  }
  emit(cfg, susy::io::to_json(r), t.str());
  return r.ok() ? kOk : kCheckFailed;
}

int cmd_dual(const Config& cfg) {
  auto x = load_supercurve(cfg);
  auto d = susy::dual_supercurve(x);
  bool auto_dual = susy::is_autodual(x);
  std::ostringstream t;
  t << "L = " << x.L.to_string() << "\n"
    << "dual L = " << d.L.to_string() << " (degree " << d.L.degree() << ")\n"
    << "susy: " << (x.susy ? "yes" : "no") << ", autodual: " << (auto_dual ? "yes" : "no") << "\n";
  Json j{{"L", susy::io::to_json(x.L.representative())},
         {"dual_L", susy::io::to_json(d.L.representative())},
         {"susy", x.susy},
         {"autodual", auto_dual}};
  emit(cfg, j, t.str());
  return kOk;
}

int cmd_moduli_dim(const Config& cfg) {
  auto m = susy::moduli_dimension(cfg.genus);
  auto d = susy::deformation_injectivity_dims(cfg.genus);
  std::ostringstream t;
  t << m.dims.to_string() << "\n"
    << "H1(S) = " << d.h1_s.to_string() << ", H1(T) = " << d.h1_tc.to_string()
    << (d.injective_shadow ? " (componentwise <=)" : " (inequality fails)") << "\n";
  Json j{{"genus", cfg.genus},
         {"dimension", m.dims.to_string()},
         {"generic_even_theta", m.generic_theta},
         {"h1_S", d.h1_s.to_string()},
         {"h1_T", d.h1_tc.to_string()},
         {"injective_shadow", d.injective_shadow}};
  emit(cfg, j, t.str());
  return kOk;
}

int cmd_superpoint(const Config& cfg) {
  auto x = load_supercurve(cfg);
  auto fam = susy::random_superpoint_family(x, cfg.seed);
  auto r = susy::pushforward_over_superpoint(fam, cfg.nu, cfg.override_hypotheses);
  std::ostringstream t;
  t << (r.free ? "free" : "not free") << ", rank " << r.rank.to_string() << " (split " << r.split_rank.to_string()
    << ", pole bound " << r.bound << ")\n";
  Json j{{"free", r.free},
         {"rank", r.rank.to_string()},
         {"split_rank", r.split_rank.to_string()},
         {"cochain", fam.cochain ? fam.cochain->to_string() : "0"},
         {"bound", r.bound}};
  emit(cfg, j, t.str());
  return r.free ? kOk : kCheckFailed;
}

int cmd_check_sc(const Config& cfg) {
  std::vector<std::string> gens{"θ"};
  std::stringstream ss(cfg.odd_moduli);
  for (std::string g; std::getline(ss, g, ',');)
    if (!g.empty()) gens.push_back(g);
  auto alg = susy::make_algebra(gens);
  susy::CoordinateChange ch{susy::io::grassmann_from(alg, cfg.z_prime), susy::io::grassmann_from(alg, cfg.theta_prime)};
  auto r = susy::check_superconformal(ch);
  std::ostringstream t;
  t << (r.superconformal ? "true" : "false, residual " + r.residual.to_string()) << "\n";
  emit(cfg, Json{{"superconformal", r.superconformal}, {"residual", r.residual.to_string()}}, t.str());
  return r.superconformal ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computations on split super Riemann surfaces over hyperelliptic curves"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--out", cfg.out, "write the JSON result to this file");
  };
  auto curve_opts = [&](CLI::App* sub) {
    sub->add_option("--genus", cfg.genus, "genus of the standard model (roots 0..2g)")->check(CLI::Range(2, 12));
    sub->add_option("--curve", cfg.curve, "curve file {\"f_coeffs\": [...]}");
    sub->add_option("--theta", cfg.theta, "even, odd, or JSON {\"subset\": [...]}");
  };

  auto* rank = app.add_subcommand("rank", "rank of the pushforward of Ber^nu");
  curve_opts(rank);
  rank->add_option("--nu", cfg.nu, "power of Ber")->required()->check(CLI::PositiveNumber);
  common(rank);

  auto* thr = app.add_subcommand("thresholds", "very-ampleness table for 2 <= g <= genus, 1 <= nu <= nu");
  thr->add_option("--genus", cfg.g_max, "largest genus")->check(CLI::Range(2, 12));
  thr->add_option("--nu", cfg.nu_max, "largest nu")->check(CLI::Range(1, 12));
  thr->add_flag("--parallel", cfg.parallel, "evaluate cells concurrently");
  common(thr);

  auto* census = app.add_subcommand("theta-census", "enumerate theta characteristics");
  census->add_option("--genus", cfg.genus, "genus of the standard model")->check(CLI::Range(2, 6));
  census->add_option("--curve", cfg.curve, "curve file");
  common(census);

  auto* embed = app.add_subcommand("embed", "build the pluri-canonical model");
  curve_opts(embed);
  embed->add_option("--nu", cfg.nu, "power of Ber")->required()->check(CLI::PositiveNumber);
  embed->add_flag("--force", cfg.force, "skip the very-ampleness check");
  common(embed);

  auto* verify = app.add_subcommand("verify", "check a model file on random sample pairs");
  verify->add_option("model", cfg.model, "model JSON")->required();
  verify->add_option("--samples", cfg.samples, "number of sample pairs")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "random seed");
  common(verify);

  auto* dual = app.add_subcommand("dual", "dual supercurve and autoduality");
  curve_opts(dual);
  common(dual);

  auto* moduli = app.add_subcommand("moduli-dim", "dimension of the super moduli space");
  moduli->add_option("--genus", cfg.genus, "genus")->required()->check(CLI::Range(2, 12));
  common(moduli);

  auto* sp = app.add_subcommand("superpoint-rank", "pushforward over a first-order superpoint family");
  curve_opts(sp);
  sp->add_option("--nu", cfg.nu, "power of Ber")->required()->check(CLI::PositiveNumber);
  sp->add_option("--seed", cfg.seed, "seed for the deformation cochain");
  sp->add_flag("--override", cfg.override_hypotheses, "run below nu = 3");
  common(sp);

  auto* sc = app.add_subcommand("check-superconformal", "check D z' = theta' D theta'");
  sc->add_option("--z", cfg.z_prime, "z'(z, θ)")->required();
  sc->add_option("--theta-prime", cfg.theta_prime, "θ'(z, θ)")->required();
  sc->add_option("--odd", cfg.odd_moduli, "comma-separated odd constants, e.g. η");
  common(sc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*rank) return cmd_rank(cfg);
    if (*thr) return cmd_thresholds(cfg);
    if (*census) return cmd_theta_census(cfg);
    if (*embed) return cmd_embed(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*dual) return cmd_dual(cfg);
    if (*moduli) return cmd_moduli_dim(cfg);
    if (*sp) return cmd_superpoint(cfg);
    if (*sc) return cmd_check_sc(cfg);
  } catch (const susy::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const susy::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
