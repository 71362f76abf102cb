#include "berkred/hypres.hpp"

#include <algorithm>
#include <optional>

namespace berk {

namespace {

// Coefficients of f(X + cY, Y).
Form shift_form(const Form& f, const Scalar& c) {
  Poly<Scalar> p(f, zero_like(c));
  Poly<Scalar> q = p.taylor_shift(c);
  Form out(f.size(), zero_like(c));
  for (int i = 0; i <= q.degree(); ++i) out[static_cast<std::size_t>(i)] = q[i];
  return out;
}

std::vector<ValExp> valuations(const Form& f) {
  std::vector<ValExp> v;
  for (const auto& c : f) v.push_back(c.valuation());
  return v;
}

}  // namespace

RayData::RayData(const HomogeneousPair& m, const Scalar& center) : center_(center), d_(m.d) {
  Form A = shift_form(m.F, center);
  Form B = shift_form(m.G, center);
  Form P = A;
  for (std::size_t i = 0; i < P.size(); ++i) P[i] -= center * B[i];
  P_ = Lines{valuations(P), 0};
  Q_ = Lines{valuations(B), 1};
  A_ = Lines{valuations(A), 0};
  B_ = Lines{valuations(B), 0};
}

void RayData::argmins(const Rational& t, bool source, Argmin& first, Argmin& second) const {
  const Lines& f = source ? A_ : P_;
  const Lines& g = source ? B_ : Q_;
  std::optional<Rational> best;
  auto scan = [&](const Lines& l) {
    for (std::size_t i = 0; i < l.v.size(); ++i) {
      if (l.v[i].is_infinite()) continue;
      Rational val = l.v[i].value() - (static_cast<long>(i) + l.shift) * t;
      if (!best || val < *best) best = val;
    }
  };
  scan(f);
  scan(g);
  auto mark = [&](const Lines& l, Argmin& a) {
    for (std::size_t i = 0; i < l.v.size(); ++i) {
      if (l.v[i].is_infinite()) continue;
      Rational val = l.v[i].value() - (static_cast<long>(i) + l.shift) * t;
      if (val == *best) {
        if (a.low < 0) a.low = static_cast<int>(i);
        a.high = static_cast<int>(i);
      }
    }
  };
  mark(f, first);
  mark(g, second);
}

int RayData::dep_down(const Rational& t, bool source) const {
  Argmin a, b;
  argmins(t, source, a, b);
  int r = d_;
  if (a.low >= 0) r = std::min(r, a.low);
  if (b.low >= 0) r = std::min(r, b.low);
  return r;
}

int RayData::dep_up(const Rational& t, bool source) const {
  Argmin a, b;
  argmins(t, source, a, b);
  return d_ - std::max(a.high, b.high);
}

bool RayData::fixed_down(const Rational& t) const {
  Argmin a, b;
  argmins(t, false, a, b);
  // 0 is fixed when P~ vanishes to higher order there than Q~.
  const long lp = a.low < 0 ? 1L << 30 : a.low;
  const long lq = b.low < 0 ? 1L << 30 : b.low;
  return lp > lq;
}

bool RayData::fixed_up(const Rational& t) const {
  Argmin a, b;
  argmins(t, false, a, b);
  const long op = a.high < 0 ? 1L << 30 : d_ - a.high;
  const long oq = b.high < 0 ? 1L << 30 : d_ - b.high;
  return oq > op;
}

Rational RayData::slope(const Rational& t, bool up) const {
  const int dep = up ? dep_up(t, false) : dep_down(t, false);
  const bool fixed = up ? fixed_up(t) : fixed_down(t);
  return frac(-2 * dep + (fixed ? d_ - 1 : d_ + 1), 2 * (d_ - 1));
}

std::vector<Rational> RayData::breakpoints(bool source) const {
  std::vector<std::pair<Rational, long>> lines;
  for (const Lines* l : source ? std::vector<const Lines*>{&A_, &B_} : std::vector<const Lines*>{&P_, &Q_})
    for (std::size_t i = 0; i < l->v.size(); ++i)
      if (!l->v[i].is_infinite()) lines.emplace_back(l->v[i].value(), static_cast<long>(i) + l->shift);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (lines[i].second == lines[j].second) continue;
      out.push_back((lines[i].first - lines[j].first) / Rational(lines[i].second - lines[j].second));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational ord_res_at(const HomogeneousPair& m, const TypeIIPoint& x) {
  return resultant(one_frame(m, x)).valuation().value();
}

namespace {

// Integral of an integer step function over [lo, hi], evaluated between cuts.
template <class Fn>
Rational integrate_steps(const std::vector<Rational>& cuts, const Rational& lo, const Rational& hi, Fn f) {
  if (!(lo < hi)) return Rational(0);
  std::vector<Rational> pts{lo};
  for (const auto& c : cuts)
    if (lo < c && c < hi) pts.push_back(c);
  pts.push_back(hi);
  Rational sum(0);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Rational mid = (pts[i] + pts[i + 1]) / 2;
    sum += Rational(f(mid)) * (pts[i + 1] - pts[i]);
  }
  return sum;
}

}  // namespace

Rational hypres_eval(const HomogeneousPair& m, const TypeIIPoint& x) {
  if (m.d < 2) throw Error("hypRes needs degree > 1");
  const FieldConfig* cfg = m.cfg;
  const TypeIIPoint g = TypeIIPoint::gauss(cfg);
  const TypeIIPoint j = join(g, x);
  const TypeIIPoint y = image_point(m, x);
  Rational term1 = rho(x, g) / 2;
  Rational term2 = rho(x, wedge(y, x, g));
  // Mass of the pullback of the Gauss point beyond each point of [g, x], seen from g.
  RayData up(m, Scalar(cfg, 0L));
  Rational integral = integrate_steps(up.breakpoints(true), Rational(0), j.t(),
                                      [&](const Rational& t) { return up.dep_up(t, true); });
  RayData down(m, x.center());
  integral += integrate_steps(down.breakpoints(true), x.t(), j.t(),
                              [&](const Rational& t) { return down.dep_down(t, true); });
  return term1 + (term2 - integral) / (m.d - 1);
}

Rational slope_at(const HomogeneousPair& m, const TypeIIPoint& x, const Direction& v) {
  if (v.base != x) throw Error("slope_at: direction is not based at " + x.str());
  IntrinsicReduction ir = intrinsic_reduction(m, x);
  return slope_from(depth_profile(ir, m.d), ir, v.tag);
}

namespace {

struct Walk {
  Scalar center;
  bool up = false;
};

// The ray leaving x in the rational direction u.
Walk walk_for(const TypeIIPoint& x, const ClosedPoint& u) {
  if (u.is_infinity()) return Walk{x.center(), true};
  if (!u.is_rational()) throw IrrationalDirectionError("descent direction " + u.str() + " is not rational");
  const FieldConfig* cfg = x.config();
  const int k = static_cast<int>(Rational(x.t() * cfg->e).get_num().get_si());
  return Walk{x.center() + lift(cfg, u.value()).times_uniformizer_pow(-k), false};
}

// Walk from x along w while pred(slope) holds on the next interval; returns the
// stopping parameter, or nullopt if pred holds all the way out.
template <class Pred>
std::optional<Rational> walk_until(const RayData& rd, const Rational& t0, bool up, Pred keep_going) {
  std::vector<Rational> cuts;
  for (const auto& b : rd.breakpoints(false))
    if (up ? b > t0 : b < t0) cuts.push_back(b);
  if (!up) std::reverse(cuts.begin(), cuts.end());
  Rational start = t0;
  for (std::size_t i = 0;; ++i) {
    Rational mid = i < cuts.size() ? (start + cuts[i]) / 2 : (up ? Rational(start + 1) : Rational(start - 1));
    if (!keep_going(rd.slope(mid, up))) return start;
    if (i >= cuts.size()) return std::nullopt;
    start = cuts[i];
  }
}

std::vector<std::pair<ClosedPoint, Rational>> slopes_at(const HomogeneousPair& m, const TypeIIPoint& x) {
  IntrinsicReduction ir = intrinsic_reduction(m, x);
  DepthProfile prof = depth_profile(ir, m.d);
  std::vector<std::pair<ClosedPoint, Rational>> out;
  for (const auto& [u, k] : prof.dep) out.emplace_back(u, slope_from(prof, ir, u));
  return out;
}

TypeIIPoint point_on_walk(const FieldConfig* cfg, const Walk& w, const Rational& t) {
  if (!representable(cfg, t))
    throw RamificationError("minimum lies at radius exponent " + to_string(t) + ", not representable with e = " +
                            std::to_string(cfg->e) + " (enlarge e)");
  return TypeIIPoint(w.center, t);
}

// Far end of the zero-slope segment leaving x in direction u.
TypeIIPoint zero_slope_end(const HomogeneousPair& m, const TypeIIPoint& x, const ClosedPoint& u) {
  Walk w = walk_for(x, u);
  RayData rd(m, w.center);
  auto stop = walk_until(rd, x.t(), w.up, [](const Rational& s) { return sgn(s) == 0; });
  if (!stop) throw Error("zero-slope ray from " + x.str() + " never turns upward");
  return point_on_walk(m.cfg, w, *stop);
}

}  // namespace

MinLocus min_locus(const HomogeneousPair& m, const MinLocusOptions& opt) {
  if (m.d < 2) throw Error("min_locus needs degree > 1");
  const FieldConfig* cfg = m.cfg;
  TypeIIPoint x = TypeIIPoint::gauss(cfg);
  for (int move = 0;; ++move) {
    if (move >= opt.max_moves) throw CapExceededError("min_locus: descent exceeded " + std::to_string(opt.max_moves) + " moves");
    std::optional<std::pair<ClosedPoint, Rational>> neg;
    for (const auto& [u, s] : slopes_at(m, x)) {
      if (sgn(s) >= 0) continue;
      if (neg) throw Error("two descent directions at " + x.str() + ": hypRes would not be convex");
      neg = std::make_pair(u, s);
    }
    if (!neg) break;
    Walk w = walk_for(x, neg->first);
    RayData rd(m, w.center);
    // The ray data must reproduce the slope computed from the depth profile.
    {
      auto cuts = rd.breakpoints(false);
      Rational next = w.up ? Rational(x.t() + 1) : Rational(x.t() - 1);
      for (const auto& b : cuts)
        if (w.up ? (b > x.t() && b < next) : (b < x.t() && b > next)) next = b;
      Rational first = rd.slope((x.t() + next) / 2, w.up);
      if (first != neg->second)
        throw Error("slope mismatch at " + x.str() + " toward " + neg->first.str() + ": profile " + to_string(neg->second) +
                    ", ray data " + to_string(first));
    }
    auto stop = walk_until(rd, x.t(), w.up, [](const Rational& s) { return sgn(s) < 0; });
    if (!stop) throw Error("hypRes decreases without bound from " + x.str());
    x = point_on_walk(cfg, w, *stop);
  }
  MinLocus out{x, x, false};
  if (m.d % 2 == 0) return out;
  std::vector<ClosedPoint> flat;
  for (const auto& [u, s] : slopes_at(m, x))
    if (sgn(s) == 0) flat.push_back(u);
  if (flat.empty()) return out;
  if (flat.size() > 2) throw Error("minimum locus at " + x.str() + " branches; it is not a segment");
  std::vector<TypeIIPoint> ends;
  for (const auto& u : flat) {
    TypeIIPoint y = zero_slope_end(m, x, u);
    for (const auto& [v, s] : slopes_at(m, y))
      if (sgn(s) == 0 && !(v == direction_of(y, x).tag))
        throw Error("minimum locus branches at " + y.str() + "; it is not a segment");
    ends.push_back(y);
  }
  out.segment = true;
  out.a = ends[0];
  out.b = ends.size() > 1 ? ends[1] : x;
  return out;
}

std::vector<ProfileRow> profile(const HomogeneousPair& m, const Segment& seg, int samples) {
  if (samples < 2) throw Error("profile needs at least 2 samples");
  const Rational len = seg.length();
  std::vector<ProfileRow> rows;
  for (int k = 0; k < samples; ++k) {
    TypeIIPoint p = point_along(seg, len * frac(k, samples - 1));
    rows.push_back(ProfileRow{p, ord_res_at(m, p), hypres_eval(m, p)});
  }
  return rows;
}

}  // namespace berk
