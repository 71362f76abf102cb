#include "berkred/redtheory.hpp"

#include <algorithm>
#include <optional>

namespace berk {

namespace {

ClosedPoint closed_of(const ResPoint& p) {
  if (p.inf) return ClosedPoint::infinity();
  if (p.a.is_gf()) return ClosedPoint::rational(Residue(p.a.gf().to_prime()));
  return ClosedPoint::rational(p.a);
}

std::string profile_entry(const ClosedPoint& u, int k) { return u.str() + ":" + std::to_string(k); }

}  // namespace

bool IntrinsicReduction::is_fixed_direction(const ClosedPoint& u) const {
  if (!fixed) return u == constant_direction;
  return one.image(u) == u;
}

std::string IntrinsicReduction::str() const {
  if (fixed) return "Fixed(" + one.divided_str() + ")";
  return "NonFixed(" + constant_direction.str() + ")";
}

IntrinsicReduction intrinsic_reduction(const HomogeneousPair& m, const TypeIIPoint& x) {
  IntrinsicReduction ir;
  ir.base = x;
  ir.image = image_point(m, x);
  ir.fixed = ir.image == x;
  ir.one = reduce_map(one_frame(m, x));
  if (ir.fixed == ir.one.constant)
    throw Error("intrinsic reduction: image point and one-frame reduction disagree at " + x.str());
  if (!ir.fixed) {
    ir.constant_direction = closed_of(ir.one.constant_value);
    if (ir.constant_direction != direction_of(x, ir.image).tag)
      throw Error("intrinsic reduction: constant value " + ir.constant_direction.str() + " differs from the direction of " +
                  ir.image.str());
  }
  return ir;
}

int DepthProfile::dep_of(const ClosedPoint& u) const {
  for (const auto& [v, k] : dep)
    if (v == u) return k;
  return 0;
}

int DepthProfile::total_mass() const {
  int s = point_mass;
  for (const auto& [v, k] : dep) s += v.degree() * k;
  return s;
}

std::string DepthProfile::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < dep.size(); ++i) {
    if (i) out += ", ";
    out += profile_entry(dep[i].first, dep[i].second);
  }
  return out + "} mass " + std::to_string(point_mass);
}

DepthProfile depth_profile(const IntrinsicReduction& ir, int d) {
  DepthProfile p;
  p.base = ir.base;
  p.d = d;
  p.dep = residue_factor(ir.one.H.f, ir.one.H.d);
  p.point_mass = ir.fixed ? ir.one.divided_degree : 0;
  if (p.total_mass() != d)
    throw Error("depth profile at " + ir.base.str() + " has mass " + std::to_string(p.total_mass()) + ", expected " +
                std::to_string(d));
  return p;
}

DepthProfile depth_profile(const HomogeneousPair& m, const TypeIIPoint& x) {
  return depth_profile(intrinsic_reduction(m, x), m.d);
}

int TangentData::directional_degree(const ClosedPoint& u) const {
  const bool at_inf = u.is_infinity();
  Residue alpha;
  if (!at_inf) alpha = closed_point_roots(u).front();
  ResPoint z = at_inf ? ResPoint::infinity() : ResPoint::finite(alpha);
  ResPoint w = two.eval(z);
  ResPoly r = w.inf ? two.Gd.f : two.Fd.f - two.Gd.f.scaled(w.a);
  const int delta = two.divided_degree;
  if (r.is_zero()) throw Error("tangent map is constant");
  if (at_inf) return delta - r.degree();
  ResPoly lin(std::vector<Residue>{-alpha, one_like(alpha)}, zero_like(alpha));
  int k = 0;
  for (;;) {
    auto [q, rem] = divmod(r, lin);
    if (!rem.is_zero()) return k;
    r = q;
    ++k;
  }
}

TangentData tangent_data(const HomogeneousPair& m, const TypeIIPoint& x, const TypeIIPoint& image) {
  TangentData t;
  t.base = x;
  t.image = image;
  t.two = reduce_map(two_frame(m, x, image));
  if (t.two.constant) throw Error("two-frame reduction is constant at " + x.str() + "; image point is wrong");
  return t;
}

TangentData tangent_data(const HomogeneousPair& m, const TypeIIPoint& x) {
  return tangent_data(m, x, image_point(m, x));
}

int local_degree(const HomogeneousPair& m, const TypeIIPoint& x) { return tangent_data(m, x).local_degree(); }

Direction tangent_image(const HomogeneousPair& m, const TypeIIPoint& x, const Direction& v) {
  if (v.base != x) throw Error("tangent_image: direction is not based at " + x.str());
  TangentData t = tangent_data(m, x);
  return Direction{t.image, t.push(v.tag)};
}

Direction tangent_image_probe(const HomogeneousPair& m, const TypeIIPoint& x, const Direction& v, int max_halvings) {
  const TypeIIPoint y = image_point(m, x);
  const FieldConfig* cfg = x.config();
  // Coarse probes can cross a fold of phi and agree by accident, so only the
  // two finest representable steps decide.
  std::optional<ClosedPoint> prev, last;
  Rational h(2);
  for (int i = 0; i <= max_halvings + 1; ++i, h /= 2) {
    if (!representable(cfg, x.t() + h) || !representable(cfg, x.t() - h)) break;
    TypeIIPoint img = image_point(m, point_in_direction(v, h));
    prev = last;
    if (img == y)
      last.reset();
    else
      last = direction_of(y, img).tag;
  }
  if (prev && last && *prev == *last) return Direction{y, *last};
  throw Error("tangent_image probe did not stabilize for " + v.str());
}

LocalDegreeData directional_surplus_degrees(const HomogeneousPair& m, const TypeIIPoint& x) {
  LocalDegreeData out;
  out.base = x;
  IntrinsicReduction ir = intrinsic_reduction(m, x);
  DepthProfile prof = depth_profile(ir, m.d);
  TangentData td = tangent_data(m, x, ir.image);
  out.local_degree = td.local_degree();
  const FieldConfig* cfg = m.cfg;

  std::vector<ClosedPoint> dirs;
  auto add = [&](const ClosedPoint& u) {
    if (std::find(dirs.begin(), dirs.end(), u) == dirs.end()) dirs.push_back(u);
  };
  for (const auto& [u, k] : prof.dep) add(u);
  auto holes = residue_factor(td.two.H.f, td.two.H.d);
  for (const auto& [u, k] : holes) add(u);
  add(ClosedPoint::infinity());
  add(ClosedPoint::rational(residue_from_int(cfg, 0)));
  add(ClosedPoint::rational(residue_from_int(cfg, 1)));
  if (cfg->mixed() && cfg->p <= 31)
    for (unsigned long a = 2; a < cfg->p; ++a) add(ClosedPoint::rational(residue_from_int(cfg, static_cast<long>(a))));

  std::optional<ClosedPoint> back;
  if (!ir.fixed) back = direction_of(ir.image, x).tag;

  for (const auto& u : dirs) {
    DirectionalEntry e;
    e.u = u;
    e.m = td.directional_degree(u);
    e.s = td.surplus(u);
    e.dep = prof.dep_of(u);
    e.image = td.push(u);
    e.indicator = back && e.image == *back;
    if (e.dep != e.s + e.m * (e.indicator ? 1 : 0)) {
      out.argument_ok = false;
      out.failures.push_back("argument principle at " + u.str() + ": dep " + std::to_string(e.dep) + " != s " + std::to_string(e.s) +
                             " + m " + std::to_string(e.m) + " * " + std::to_string(e.indicator));
    }
    out.entries.push_back(e);
  }

  int surplus_total = 0;
  for (const auto& [u, k] : holes) surplus_total += u.degree() * td.surplus(u);
  if (surplus_total != m.d - out.local_degree) {
    out.surplus_rule = false;
    out.failures.push_back("sum of surpluses " + std::to_string(surplus_total));
  }

  // Each rational target: its preimages under the residue map carry the local degree.
  std::vector<ClosedPoint> targets;
  for (const auto& e : out.entries)
    if (e.image.is_rational() && std::find(targets.begin(), targets.end(), e.image) == targets.end()) targets.push_back(e.image);
  const int delta = td.local_degree();
  for (const auto& w : targets) {
    ResPoly r = w.is_infinity() ? td.two.Gd.f : td.two.Fd.f - td.two.Gd.f.scaled(w.value());
    int sum = 0;
    for (const auto& [u, mult] : residue_factor(r, delta)) {
      int mu = td.directional_degree(u);
      if (mu != mult || td.push(u) != w) {
        out.preimage_rule = false;
        out.failures.push_back("preimage " + u.str() + " of " + w.str() + ": m " + std::to_string(mu) + " vs " +
                               std::to_string(mult));
      }
      sum += u.degree() * mu;
    }
    if (sum != delta) {
      out.preimage_rule = false;
      out.failures.push_back("preimages of " + w.str() + " carry " + std::to_string(sum));
    }
  }
  return out;
}

std::string to_string(Semistability s) {
  switch (s) {
    case Semistability::Stable: return "Stable";
    case Semistability::SemistableNotStable: return "SemistableNotStable";
    case Semistability::Unstable: return "Unstable";
  }
  return "?";
}

Semistability semistability_from(const DepthProfile& prof, const IntrinsicReduction& ir) {
  const int d = prof.d;
  bool semistable = true, stable = true;
  for (const auto& [u, k] : prof.dep) {
    // Compare 2*dep against the doubled bounds to stay in integers.
    if (ir.is_fixed_direction(u)) {
      if (!(2 * k < d)) semistable = false;
      if (!(2 * k < d - 1)) stable = false;
    } else {
      if (!(2 * k <= d + 1)) semistable = false;
      if (!(2 * k <= d)) stable = false;
    }
  }
  if (!semistable) return Semistability::Unstable;
  return stable ? Semistability::Stable : Semistability::SemistableNotStable;
}

Semistability semistability_check(const HomogeneousPair& m, const TypeIIPoint& x) {
  if (m.d < 2) throw Error("semistability needs degree > 1");
  IntrinsicReduction ir = intrinsic_reduction(m, x);
  return semistability_from(depth_profile(ir, m.d), ir);
}

Rational slope_from(const DepthProfile& prof, const IntrinsicReduction& ir, const ClosedPoint& u) {
  const int d = prof.d;
  if (d < 2) throw Error("slope needs degree > 1");
  const int dep = prof.dep_of(u);
  const int bonus = ir.is_fixed_direction(u) ? d - 1 : d + 1;
  return frac(-2 * dep + bonus, 2 * (d - 1));
}

}  // namespace berk
