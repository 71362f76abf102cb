#include "berkred/harness.hpp"

#include <algorithm>
#include <chrono>
#include <future>

namespace berk {

namespace {

Form form3(const Scalar& y2, const Scalar& xy, const Scalar& x2) { return Form{y2, xy, x2}; }

Residue coeff(const ResPoly& f, int i) { return f[i]; }

// tr^2/det of a residue Mobius over Q(s), when it is a constant.
std::optional<Rational> constant_ratio(const Residue& r) {
  const Qs& q = r.qs();
  if (q.num().degree() > 0 || q.den().degree() > 0) return std::nullopt;
  return q.num()[0] / q.den()[0];
}

}  // namespace

void NormalFormSpec::validate() const {
  if (const auto* l = std::get_if<Loxodromic>(&form)) {
    const Scalar one(cfg, 1L);
    if (!(ValExp(Rational(0)) < (l->a - one).valuation()))
      throw Error("loxodromic normal form needs |a - 1| < 1");
    if (!(ValExp(Rational(0)) < (l->b - one).valuation()))
      throw Error("loxodromic normal form needs |b - 1| < 1");
    if (l->a == l->b) throw Error("loxodromic normal form needs a != b");
    if (l->omega.valuation() != ValExp(Rational(0))) throw Error("omega must be a unit");
    Residue w = reduce_unit(l->omega);
    Residue one_r = residue_from_int(cfg, 1);
    // A root of unity of order > 1 in the residue field.
    if (w == one_r) throw Error("omega must reduce to a nontrivial root of unity");
    if (w.is_gf()) return;
    auto ratio = constant_ratio(w);
    if (!ratio || *ratio != -1) throw Error("omega must reduce to a root of unity");
  } else {
    const auto& b = std::get<Parabolic>(form).b;
    if (!cfg->mixed()) throw Error("parabolic normal form needs a mixed characteristic field");
    ValExp v = b.valuation();
    if (v.is_infinite() || !(Rational(0) < v.value())) throw Error("parabolic normal form needs 0 < |b| < 1");
  }
}

HomogeneousPair NormalFormSpec::map() const {
  const Scalar zero(cfg, 0L), one(cfg, 1L);
  if (const auto* l = std::get_if<Loxodromic>(&form))
    return HomogeneousPair(form3(zero, -(l->omega * l->b), l->omega), form3(-l->a, one, zero));
  const auto& b = std::get<Parabolic>(form).b;
  return HomogeneousPair(form3(b, -(one + b), one), form3(zero, one, zero));
}

TypeIIPoint NormalFormSpec::xi_m() const {
  if (const auto* l = std::get_if<Loxodromic>(&form)) return TypeIIPoint(l->a, -(l->a - l->b).valuation().value() / 2);
  const auto& b = std::get<Parabolic>(form).b;
  return TypeIIPoint(Scalar(cfg, 0L), -b.valuation().value() / 2);
}

NormalFormSpec loxodromic_spec(int e) {
  const FieldConfig* cfg = padic_field(3, e);
  return NormalFormSpec{cfg, Loxodromic{Scalar(cfg, -1L), Scalar(cfg, 4L), Scalar(cfg, 10L)}};
}

NormalFormSpec parabolic_spec(int e) {
  const FieldConfig* cfg = padic_field(2, e);
  return NormalFormSpec{cfg, Parabolic{Scalar(cfg, 2L)}};
}

Fixture loxodromic_fixture(int e) { return Fixture{"loxodromic", padic_field(3, e), "-z*(z-10)/(z-4)"}; }
Fixture parabolic_fixture(int e) { return Fixture{"parabolic", padic_field(2, e), "(z-2)*(z-1)/z"}; }
Fixture acyclic_fixture(int e) { return Fixture{"acyclic", laurent_field(e), "s*z*(z-(1+t^2))/(z-(1+t))"}; }

std::string to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::TwoToOne: return "TwoToOne";
    case ReductionKind::ConstantImage: return "ConstantImage";
    case ReductionKind::BijectiveAcyclic: return "BijectiveAcyclic";
    case ReductionKind::BijectiveCyclic: return "BijectiveCyclic";
    case ReductionKind::Unknown: return "Unknown";
  }
  return "?";
}

std::string Classification::str() const {
  if (kind == ReductionKind::BijectiveCyclic) return "BijectiveCyclic(" + std::to_string(period) + ")";
  return to_string(kind);
}

Classification classify_reduction(const HomogeneousPair& m, const ClassifyOptions& opt) {
  if (m.d != 2) throw Error("classify_reduction is for quadratic maps");
  Classification c;
  c.xi_phi = min_locus(m).a;
  IntrinsicReduction ir = intrinsic_reduction(m, c.xi_phi);
  DepthProfile prof = depth_profile(ir, m.d);
  if (prof.point_mass == 2) {
    c.kind = ReductionKind::TwoToOne;
    return c;
  }
  if (!ir.fixed) {
    c.kind = ReductionKind::ConstantImage;
    return c;
  }
  // Residue map is a Mobius transformation; mass 1 sits in one rational direction.
  for (const auto& [u, k] : prof.dep)
    if (k > 0) c.v1 = u;
  if (!c.v1 || prof.dep.size() != 1) throw Error("bijective reduction without a single depth-positive direction");

  ClosedPoint u = *c.v1;
  for (int n = 1; n <= opt.orbit_cap; ++n) {
    u = ir.one.image(u);
    if (u == *c.v1) {
      c.kind = ReductionKind::BijectiveCyclic;
      c.period = n;
      c.note = "v1 = " + c.v1->str() + " returns after " + std::to_string(n) + " steps";
      return c;
    }
  }
  const FieldConfig* cfg = m.cfg;
  if (cfg->mixed()) {
    // Every bijection of P^1(F_p) has finite order.
    c.kind = ReductionKind::Unknown;
    c.note = "orbit cap " + std::to_string(opt.orbit_cap) + " reached over a finite residue field; acyclic needs the laurent backend";
    return c;
  }
  const ResPoly& f = ir.one.Fd.f;
  const ResPoly& g = ir.one.Gd.f;
  Residue a = coeff(f, 1), b = coeff(f, 0), cc = coeff(g, 1), d = coeff(g, 0);
  Residue tr = a + d, det = a * d - b * cc;
  Residue ratio = tr * tr / det;
  auto r = constant_ratio(ratio);
  // Finite order n > 1 over Q(s) forces tr^2/det in {0, 1, 2, 3}; 4 is parabolic
  // unless scalar, and scalars fix v1.
  if (r && (*r == 0 || *r == 1 || *r == 2 || *r == 3)) {
    c.kind = ReductionKind::Unknown;
    c.note = "residue Mobius has finite order but v1 did not return within the cap";
    return c;
  }
  c.kind = ReductionKind::BijectiveAcyclic;
  c.note = "residue Mobius " + ir.one.divided_str() + " has tr^2/det = " + ratio.str() + ", infinite order";
  return c;
}

namespace {

Form derivative_x(const Form& f) {
  Form out;
  for (std::size_t i = 1; i < f.size(); ++i) out.push_back(f[i] * Scalar(f[i].config(), static_cast<long>(i)));
  return out;
}

Form derivative_y(const Form& f) {
  const long d = static_cast<long>(f.size()) - 1;
  Form out;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) out.push_back(f[i] * Scalar(f[i].config(), d - static_cast<long>(i)));
  return out;
}

Form form_mul(const Form& a, const Form& b) {
  Form out(a.size() + b.size() - 1, zero_like(a.front()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Reduced Jacobian F_X G_Y - F_Y G_X of a normalized pair; its zeros are the
// directions holding critical points.
ResForm reduced_jacobian(const HomogeneousPair& n) {
  Form p = form_mul(derivative_x(n.F), derivative_y(n.G));
  Form q = form_mul(derivative_y(n.F), derivative_x(n.G));
  for (std::size_t i = 0; i < p.size(); ++i) p[i] -= q[i];
  std::optional<Rational> low;
  for (const auto& c : p) {
    ValExp v = c.valuation();
    if (!v.is_infinite() && (!low || v.value() < *low)) low = v.value();
  }
  if (!low) throw Error("Jacobian vanishes identically");
  const int k = static_cast<int>(Rational(*low * n.cfg->e).get_num().get_si());
  for (auto& c : p) c = c.times_uniformizer_pow(-k);
  return reduce_form(p, n.cfg);
}

}  // namespace

TypeIIPoint ramification_retraction(const HomogeneousPair& m, const Classification& c, const RetractionOptions& opt) {
  if (m.d != 2) throw Error("ramification_retraction is for quadratic maps");
  const FieldConfig* cfg = m.cfg;
  TypeIIPoint x = c.xi_phi;
  if (local_degree(m, x) == 2) return x;
  const Rational step = frac(1, cfg->e);
  for (int i = 0; i < opt.max_steps; ++i) {
    ResForm jac = reduced_jacobian(one_frame(m, x));
    auto dirs = residue_factor(jac.f, jac.d);
    if (dirs.size() != 1)
      throw Error("critical points split at " + x.str() + " although the local degree is 1");
    const ClosedPoint& u = dirs.front().first;
    if (!u.is_rational()) throw IrrationalDirectionError("critical points lie in the irrational direction " + u.str());
    if (i == 0 && c.v1 && u != *c.v1)
      throw Error("ramification lies in " + u.str() + ", not in v1 = " + c.v1->str());
    TypeIIPoint y = point_in_direction(Direction{x, u}, step);
    TangentData td = tangent_data(m, y);
    if (td.local_degree() == 2) {
      // Degree 1 just before y, or xi_0 lies strictly inside the last step.
      if (td.directional_degree(direction_of(y, x).tag) != 1)
        throw RamificationError("ramification locus starts strictly between " + x.str() + " and " + y.str() + " (enlarge e)");
      return y;
    }
    // Overshot: the critical points now lie back toward x.
    ResForm jy = reduced_jacobian(one_frame(m, y));
    for (const auto& [w, k] : residue_factor(jy.f, jy.d))
      if (w == direction_of(y, x).tag)
        throw RamificationError("ramification locus touches the open segment from " + x.str() + " to " + y.str() + " (enlarge e)");
    x = y;
  }
  throw CapExceededError("ramification_retraction: no ramified point within " + std::to_string(opt.max_steps) + " steps");
}

TypeIIPoint ramification_retraction(const HomogeneousPair& m) { return ramification_retraction(m, classify_reduction(m)); }

DepthSequences abc_sequences(const HomogeneousPair& m, int J) {
  Classification c = classify_reduction(m);
  return abc_sequences(m, c, ramification_retraction(m, c), J);
}

DepthSequences abc_sequences(const HomogeneousPair& m, const Classification& c, const TypeIIPoint& xi_1, int J) {
  if (c.kind != ReductionKind::BijectiveCyclic) throw Error("depth sequences need a cyclic bijective reduction");
  if (xi_1 == c.xi_phi) throw Error("xi_1 coincides with xi_phi");
  DepthSequences out;
  out.period = c.period;
  out.xi_1 = xi_1;
  out.back = direction_of(xi_1, c.xi_phi).tag;

  TangentData td = tangent_data(m, xi_1);
  const ClosedPoint target = direction_of(td.image, c.xi_phi).tag;
  ResPoly r = target.is_infinity() ? td.two.Gd.f : td.two.Fd.f - td.two.Gd.f.scaled(target.value());
  std::vector<ClosedPoint> others;
  for (const auto& [u, k] : residue_factor(r, td.local_degree()))
    if (u != out.back) others.push_back(u);
  if (others.size() != 1 || !others.front().is_rational())
    throw Error("no distinguished direction w1 at " + xi_1.str());
  out.w1 = others.front();

  const int p = c.period;
  auto row_at = [&](int j) -> DepthRow {
    DepthRow r;
    r.j = j;
    if (j == 0) r.point_mass = 1;  // xi_1 itself
    if (j > 0) r = out.rows[static_cast<std::size_t>(j - 1)];
    return r;
  };
  // The textbook recursion seeds A_0 = 1 and drops the point mass elsewhere.
  auto seeded_ab = [&](int j) -> long {
    if (j < 0) return 0;
    if (j == 0) return 1;
    const auto& r = row_at(j);
    return r.A + r.B;
  };
  for (int j = 1; j <= J; ++j) {
    DepthProfile prof = depth_profile(iterate(m, j), xi_1);
    DepthRow row;
    row.j = j;
    row.point_mass = prof.point_mass;
    for (const auto& [u, k] : prof.dep) {
      if (u == out.w1) row.A = k;
      else if (u == out.back) row.C = k;
      else row.B += u.degree() * k;
    }
    out.rows.push_back(row);
    const std::string tag = "j=" + std::to_string(j) + ": ";
    const long deg = 1L << j;
    if (row.total() != deg) out.failures.push_back(tag + "mass " + std::to_string(row.total()));
    const long expect_pm = j % p == 0 ? 1L << (j / p) : 0;
    if (row.point_mass != expect_pm) out.failures.push_back(tag + "point mass " + std::to_string(row.point_mass));
    if (j >= p && !row.bounds()) out.failures.push_back(tag + "bounds on A, B, C");
    // w1 maps U(w1) onto the complement of the disk at phi(xi_1); what is
    // missing are the preimages sitting in that disk, point mass included.
    long inside = 0;
    if (j - p >= 0) {
      DepthRow prev = row_at(j - p);
      inside = prev.A + prev.B + prev.point_mass;
    }
    if (row.A != deg / 2 - inside) out.failures.push_back(tag + "A = " + std::to_string(row.A) + ", expected " + std::to_string(deg / 2 - inside));
    if (j > p && row.B != 2 * (row_at(j - p).A + row_at(j - p).B))
      out.failures.push_back(tag + "B recursion, B = " + std::to_string(row.B));

    const long seeded_a = deg / 2 - seeded_ab(j - p);
    if (row.A != seeded_a)
      out.notes.push_back(tag + "A = " + std::to_string(row.A) + ", the A_0 = 1 recursion gives " + std::to_string(seeded_a));
    if (j >= p && !row.balance()) out.notes.push_back(tag + "2A + B = " + std::to_string(2 * row.A + row.B) + ", not 2^j");
    const Rational cf = closed_form_ab(j, p);
    if (cf != row.A + row.B) out.notes.push_back(tag + "A + B = " + std::to_string(row.A + row.B) + ", closed form " + to_string(cf));
  }
  return out;
}

Rational closed_form_ab(int j, int p) {
  // (2^j / 2) (1 - 2^-(floor(j/p)+1)p) / (1 - 2^-p)
  Rational half(Integer(1) << (j - 1));
  Rational tail(Integer(1), Integer(1) << ((j / p + 1) * p));
  Rational base(Integer(1), Integer(1) << p);
  return half * (1 - tail) / (1 - base);
}

TheoremReport verify_theorem(const HomogeneousPair& m, int J, const VerifyOptions& opt) {
  if (J < 1) throw Error("verify needs at least one iterate");
  if ((1L << J) > opt.degree_cap)
    throw CapExceededError("deg phi^" + std::to_string(J) + " exceeds the degree cap " + std::to_string(opt.degree_cap));
  TheoremReport rep;
  rep.cfg = m.cfg;
  rep.map = m.str();
  rep.classification = classify_reduction(m);
  const Classification& c = rep.classification;
  if (c.kind == ReductionKind::Unknown) rep.failures.push_back("classification unknown: " + c.note);
  const bool cyclic = c.kind == ReductionKind::BijectiveCyclic;
  if (cyclic) rep.xi_0 = ramification_retraction(m, c);

  auto run = [&m, &opt](int j) {
    auto t0 = std::chrono::steady_clock::now();
    PerJ r;
    r.j = j;
    HomogeneousPair mj = iterate(m, j, opt.degree_cap);
    r.locus = min_locus(mj);
    IntrinsicReduction ir = intrinsic_reduction(mj, r.locus.a);
    r.depths = depth_profile(ir, mj.d);
    r.verdict = semistability_from(r.depths, ir);
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
  };
  std::vector<std::future<PerJ>> futures;
  for (int j = 1; j <= J; ++j)
    futures.push_back(std::async(opt.parallel ? std::launch::async : std::launch::deferred, run, j));
  for (auto& f : futures) rep.per_j.push_back(f.get());

  for (const auto& r : rep.per_j) {
    const TypeIIPoint expect = cyclic && r.j >= c.period ? *rep.xi_0 : c.xi_phi;
    if (!(r.locus == MinLocus{expect, expect, false}))
      rep.failures.push_back("j=" + std::to_string(r.j) + ": locus " + r.locus.str() + ", expected " + expect.str() +
                             ", profile " + r.depths.str());
    if (r.verdict == Semistability::Unstable)
      rep.failures.push_back("j=" + std::to_string(r.j) + ": unstable at the locus " + r.locus.str());
  }
  if (cyclic && J >= 1) {
    rep.sequences = abc_sequences(m, c, *rep.xi_0, J);
    for (const auto& f : rep.sequences->failures) rep.failures.push_back("depth sequences " + f);
  }
  return rep;
}

std::string rational_json(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

nlohmann::json point_json(const TypeIIPoint& x) { return {{"center", x.center().str()}, {"t", rational_json(x.t())}}; }

nlohmann::json to_json(const TheoremReport& r) {
  using nlohmann::json;
  json out;
  out["field"] = {{"backend", r.cfg->mixed() ? "padic" : "laurent"}, {"p", r.cfg->p}, {"e", r.cfg->e}};
  out["map"] = r.map;
  out["classification"] = to_string(r.classification.kind);
  out["period"] = r.classification.kind == ReductionKind::BijectiveCyclic ? json(r.classification.period) : json(nullptr);
  out["xi_phi"] = point_json(r.classification.xi_phi);
  out["xi_0"] = r.xi_0 ? point_json(*r.xi_0) : json(nullptr);
  json rows = json::array();
  for (const auto& pj : r.per_j) {
    json locus = pj.locus.segment ? json::array({point_json(pj.locus.a), point_json(pj.locus.b)}) : point_json(pj.locus.a);
    json dirs = json::array();
    for (const auto& [u, k] : pj.depths.dep) dirs.push_back({{"direction", u.str()}, {"dep", k}});
    rows.push_back({{"j", pj.j},
                    {"locus", locus},
                    {"semistability", to_string(pj.verdict)},
                    {"depths", {{"directions", dirs}, {"point_mass", pj.depths.point_mass}}},
                    {"millis", pj.millis}});
  }
  out["per_j"] = rows;
  if (r.sequences) {
    const auto& s = *r.sequences;
    json seq = json::array();
    for (const auto& row : s.rows)
      seq.push_back({{"j", row.j},
                     {"A", row.A},
                     {"B", row.B},
                     {"C", row.C},
                     {"point_mass", row.point_mass},
                     {"closed_form_A_plus_B", rational_json(closed_form_ab(row.j, s.period))}});
    out["depth_sequences"] = {{"xi_1", point_json(s.xi_1)}, {"w1", s.w1.str()}, {"rows", seq}, {"notes", s.notes}};
  }
  out["failures"] = r.failures;
  return out;
}

std::optional<Rational> finite_difference_slope(const HomogeneousPair& m, const Direction& v, Rational h) {
  const FieldConfig* cfg = m.cfg;
  const Rational f0 = hypres_eval(m, v.base);
  auto quotient = [&](const Rational& s) -> Rational { return (hypres_eval(m, point_in_direction(v, s)) - f0) / s; };
  while (representable(cfg, h / 2)) {
    Rational q1 = quotient(h), q2 = quotient(h / 2);
    if (q1 == q2) return q2;
    h /= 2;
  }
  return std::nullopt;
}

}  // namespace berk
