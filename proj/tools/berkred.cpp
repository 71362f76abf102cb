#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "berkred/harness.hpp"

using namespace berk;
using nlohmann::json;

namespace {

struct Common {
  std::string backend = "padic";
  unsigned long p = 0;
  int e = 1;
  std::string map;
  std::string format = "text";

  const FieldConfig* field() const {
    if (backend == "laurent") return laurent_field(e);
    if (p < 2) throw Error("--p is required for the padic backend");
    return padic_field(p, e);
  }
};

void add_common(CLI::App* sub, Common& c, const std::vector<std::string>& formats) {
  sub->add_option("--backend", c.backend, "padic or laurent")->check(CLI::IsMember({"padic", "laurent"}));
  sub->add_option("--p", c.p, "residue characteristic (padic)");
  sub->add_option("--e", c.e, "ramification index of the working field")->check(CLI::PositiveNumber);
  sub->add_option("--map", c.map, "rational map in z")->required();
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats));
}

std::string out_rational(const Rational& q, const std::string& format) {
  return format == "text" ? to_string(q) : rational_json(q);
}

json profile_json(const DepthProfile& p) {
  json dirs = json::array();
  for (const auto& [u, k] : p.dep) dirs.push_back({{"direction", u.str()}, {"dep", k}});
  return {{"point", point_json(p.base)}, {"directions", dirs}, {"point_mass", p.point_mass}};
}

void print_report_text(const TheoremReport& r) {
  std::cout << "map " << r.map << "\n";
  std::cout << "classification " << r.classification.str() << "\n";
  std::cout << "xi_phi " << r.classification.xi_phi.str() << "\n";
  if (r.xi_0) std::cout << "xi_0 " << r.xi_0->str() << "\n";
  for (const auto& pj : r.per_j)
    std::cout << "j=" << pj.j << " locus " << pj.locus.str() << " " << to_string(pj.verdict) << " " << pj.depths.str() << " ("
              << pj.millis << " ms)\n";
  if (r.sequences) {
    for (const auto& row : r.sequences->rows)
      std::cout << "j=" << row.j << " A=" << row.A << " B=" << row.B << " C=" << row.C << " mass=" << row.point_mass << "\n";
    for (const auto& n : r.sequences->notes) std::cout << "note " << n << "\n";
  }
  for (const auto& f : r.failures) std::cout << "FAIL " << f << "\n";
  std::cout << (r.ok() ? "verified" : "not verified") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduction theory and hyperbolic resultants for rational maps over non-archimedean fields"};
  app.require_subcommand(1);

  Common c;
  std::string point, from, to;
  int iters = 1, samples = 5, degree_cap = 64;

  auto* ordres = app.add_subcommand("eval-ordres", "ordRes at a type II point");
  add_common(ordres, c, {"text", "json"});
  ordres->add_option("--point", point, "center@t")->required();

  auto* hyp = app.add_subcommand("eval-hypres", "hypRes at a type II point");
  add_common(hyp, c, {"text", "json"});
  hyp->add_option("--point", point, "center@t")->required();

  auto* depths = app.add_subcommand("depths", "depth profile and reduction at a point");
  add_common(depths, c, {"text", "json"});
  depths->add_option("--point", point, "center@t")->required();
  depths->add_option("--iters", iters, "iterate of the map")->check(CLI::PositiveNumber);

  auto* classify = app.add_subcommand("classify", "type of the reduction at the minimum point");
  add_common(classify, c, {"text", "json"});

  auto* minlocus = app.add_subcommand("minlocus", "minimum locus of hypRes");
  add_common(minlocus, c, {"text", "json"});
  minlocus->add_option("--iters", iters, "iterate of the map")->check(CLI::PositiveNumber);
  minlocus->add_option("--degree-cap", degree_cap, "largest degree of an iterate");

  auto* verify = app.add_subcommand("verify", "check the stationarity theorem for iterates 1..J");
  add_common(verify, c, {"text", "json"});
  iters = 4;
  verify->add_option("--iters", iters, "largest iterate J")->check(CLI::PositiveNumber);
  verify->add_option("--degree-cap", degree_cap, "largest degree of an iterate");

  auto* prof = app.add_subcommand("profile", "ordRes and hypRes along a segment");
  add_common(prof, c, {"csv", "json", "text"});
  prof->add_option("--from", from, "center@t")->required();
  prof->add_option("--to", to, "center@t")->required();
  prof->add_option("--samples", samples, "points, endpoints included")->check(CLI::Range(2, 100000));

  CLI11_PARSE(app, argc, argv);

  try {
    const FieldConfig* cfg = c.field();
    HomogeneousPair m = parse_map(c.map, cfg);
    const bool as_json = c.format == "json";

    if (ordres->parsed() || hyp->parsed()) {
      TypeIIPoint x = parse_point(point, cfg);
      Rational v = ordres->parsed() ? ord_res_at(m, x) : hypres_eval(m, x);
      if (as_json)
        std::cout << json{{"point", point_json(x)}, {ordres->parsed() ? "ord_res" : "hyp_res", rational_json(v)}}.dump() << "\n";
      else
        std::cout << out_rational(v, c.format) << "\n";
      return 0;
    }
    if (depths->parsed()) {
      HomogeneousPair mj = iterate(m, iters, degree_cap);
      TypeIIPoint x = parse_point(point, cfg);
      IntrinsicReduction ir = intrinsic_reduction(mj, x);
      DepthProfile p = depth_profile(ir, mj.d);
      Semistability s = semistability_from(p, ir);
      if (as_json) {
        json j = profile_json(p);
        j["reduction"] = ir.str();
        j["image"] = point_json(ir.image);
        j["semistability"] = to_string(s);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << ir.str() << " " << p.str() << " " << to_string(s) << "\n";
      }
      return 0;
    }
    if (classify->parsed()) {
      Classification k = classify_reduction(m);
      if (as_json) {
        json j{{"classification", to_string(k.kind)}, {"xi_phi", point_json(k.xi_phi)}, {"note", k.note}};
        j["period"] = k.kind == ReductionKind::BijectiveCyclic ? json(k.period) : json(nullptr);
        j["v1"] = k.v1 ? json(k.v1->str()) : json(nullptr);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << k.str() << " at " << k.xi_phi.str() << "\n";
      }
      return 0;
    }
    if (minlocus->parsed()) {
      MinLocus L = min_locus(iterate(m, iters, degree_cap));
      if (as_json) {
        json j = L.segment ? json{{"segment", json::array({point_json(L.a), point_json(L.b)})}} : json{{"point", point_json(L.a)}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << L.str() << "\n";
      }
      return 0;
    }
    if (verify->parsed()) {
      if (iters > 4) std::cerr << "warning: J = " << iters << " exceeds the default of 4; runtime grows quickly\n";
      TheoremReport r = verify_theorem(m, iters, VerifyOptions{degree_cap, true});
      if (as_json)
        std::cout << to_json(r).dump(2) << "\n";
      else
        print_report_text(r);
      return r.ok() ? 0 : 1;
    }
    if (prof->parsed()) {
      Segment seg{parse_point(from, cfg), parse_point(to, cfg)};
      auto rows = profile(m, seg, samples);
      if (c.format == "json") {
        json arr = json::array();
        for (const auto& r : rows)
          arr.push_back({{"point", point_json(r.point)}, {"ord_res", rational_json(r.ord_res)}, {"hyp_res", rational_json(r.hyp_res)}});
        std::cout << arr.dump(2) << "\n";
      } else if (c.format == "text") {
        for (const auto& r : rows)
          std::cout << r.point.str() << " " << to_string(r.ord_res) << " " << to_string(r.hyp_res) << "\n";
      } else {
        std::cout << "t,ord_res,hyp_res\n";
        for (const auto& r : rows)
          std::cout << rational_json(r.point.t()) << "," << rational_json(r.ord_res) << "," << rational_json(r.hyp_res) << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
