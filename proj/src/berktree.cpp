#include "berkred/berktree.hpp"

#include <algorithm>

#include "berkred/expr.hpp"

namespace berk {

namespace {

// e * q as an integer; q must be representable.
int scaled_exponent(const FieldConfig* cfg, const Rational& q) {
  Rational k = q * cfg->e;
  if (k.get_den() != 1) throw RamificationError("exponent " + to_string(q) + " needs ramification index divisible by " +
                                                k.get_den().get_str() + " (enlarge e)");
  return static_cast<int>(k.get_num().get_si());
}

}  // namespace

bool representable(const FieldConfig* cfg, const Rational& t) { return Rational(t * cfg->e).get_den() == 1; }

void require_representable(const FieldConfig* cfg, const Rational& t) { scaled_exponent(cfg, t); }

Scalar canonical_center(const Scalar& a, const Rational& t) {
  const FieldConfig* cfg = a.config();
  const int limit = -scaled_exponent(cfg, t);
  Scalar x = a;
  Scalar out(cfg, 0L);
  while (!x.is_zero()) {
    const int k = scaled_exponent(cfg, x.valuation().value());
    if (k >= limit) break;
    Scalar digit = lift(cfg, x.times_uniformizer_pow(-k).residue()).times_uniformizer_pow(k);
    out += digit;
    x -= digit;
  }
  return out;
}

TypeIIPoint::TypeIIPoint(const Scalar& center, const Rational& t) : center_(canonical_center(center, t)), t_(t) {}

Mobius TypeIIPoint::frame() const {
  const FieldConfig* cfg = config();
  return Mobius::affine(Scalar::uniformizer_pow(cfg, -scaled_exponent(cfg, t_)), center_);
}

bool TypeIIPoint::contains(const Scalar& z) const { return (z - center_).valuation() >= ValExp(Rational(-t_)); }

bool TypeIIPoint::contains(const TypeIIPoint& y) const { return y.t_ <= t_ && contains(y.center_); }

std::string TypeIIPoint::str() const { return center_.str() + "@" + to_string(t_); }

TypeIIPoint parse_point(const std::string& text, const FieldConfig* cfg) {
  auto at = text.rfind('@');
  if (at == std::string::npos) throw Error("point literal must look like center@t: " + text);
  std::string c = text.substr(0, at);
  Rational t = parse_rational(text.substr(at + 1));
  require_representable(cfg, t);
  c.erase(std::remove_if(c.begin(), c.end(), [](unsigned char ch) { return std::isspace(ch); }), c.end());
  if (c == "inf") return TypeIIPoint(Scalar(cfg, 0L), -t);
  return TypeIIPoint(parse_scalar(c, cfg), t);
}

Rational Segment::length() const { return rho(from, to); }

namespace {

Rational join_exponent(const TypeIIPoint& x, const TypeIIPoint& y) {
  Rational t = std::max(x.t(), y.t());
  ValExp v = (x.center() - y.center()).valuation();
  if (!v.is_infinite()) t = std::max(t, Rational(-v.value()));
  return t;
}

}  // namespace

TypeIIPoint join(const TypeIIPoint& x, const TypeIIPoint& y) { return TypeIIPoint(x.center(), join_exponent(x, y)); }

Rational rho(const TypeIIPoint& x, const TypeIIPoint& y) {
  Rational t = join_exponent(x, y);
  return 2 * t - x.t() - y.t();
}

TypeIIPoint wedge(const TypeIIPoint& x, const TypeIIPoint& y, const TypeIIPoint& base) {
  TypeIIPoint best = join(x, y);
  for (const TypeIIPoint& j : {join(x, base), join(y, base)})
    if (j.t() < best.t()) best = j;
  return best;
}

Direction direction_to_classical(const TypeIIPoint& base, const Scalar* target) {
  if (!target || !base.contains(*target)) return Direction{base, ClosedPoint::infinity()};
  const int k = scaled_exponent(base.config(), base.t());
  Residue r = (*target - base.center()).times_uniformizer_pow(k).residue();
  return Direction{base, ClosedPoint::rational(r)};
}

Direction direction_of(const TypeIIPoint& base, const TypeIIPoint& target) {
  if (base == target) throw Error("direction_of: target equals base " + base.str());
  if (base.contains(target)) return direction_to_classical(base, &target.center());
  return Direction{base, ClosedPoint::infinity()};
}

bool in_direction(const Direction& v, const TypeIIPoint& y) {
  if (y == v.base) return false;
  return direction_of(v.base, y).tag == v.tag;
}

TypeIIPoint point_in_direction(const Direction& v, const Rational& h) {
  const FieldConfig* cfg = v.base.config();
  if (v.tag.is_infinity()) {
    require_representable(cfg, v.base.t() + h);
    return TypeIIPoint(v.base.center(), v.base.t() + h);
  }
  if (!v.tag.is_rational()) throw IrrationalDirectionError("no K-rational point in direction " + v.str());
  const int k = scaled_exponent(cfg, v.base.t());
  Scalar c = v.base.center() + lift(cfg, v.tag.value()).times_uniformizer_pow(-k);
  require_representable(cfg, v.base.t() - h);
  return TypeIIPoint(c, v.base.t() - h);
}

TypeIIPoint point_along(const Segment& seg, const Rational& dist) {
  const Rational len = seg.length();
  if (dist < 0 || dist > len) throw Error("point_along: distance " + to_string(dist) + " outside [0, " + to_string(len) + "]");
  const Rational tj = join_exponent(seg.from, seg.to);
  const Rational up = tj - seg.from.t();
  const FieldConfig* cfg = seg.from.config();
  if (dist <= up) {
    Rational t = seg.from.t() + dist;
    require_representable(cfg, t);
    return TypeIIPoint(seg.from.center(), t);
  }
  Rational t = tj - (dist - up);
  require_representable(cfg, t);
  return TypeIIPoint(seg.to.center(), t);
}

namespace {

TypeIIPoint apply_affine(const Scalar& scale, const Scalar& shift, const TypeIIPoint& x) {
  Rational t = x.t() - scale.valuation().value();
  return TypeIIPoint(scale * x.center() + shift, t);
}

TypeIIPoint apply_inversion(const TypeIIPoint& x) {
  ValExp vb = x.center().valuation();
  if (!vb.is_infinite() && vb.value() < -x.t()) {
    const Rational& v = vb.value();
    return TypeIIPoint(x.center().inverse(), x.t() + 2 * v);
  }
  return TypeIIPoint(Scalar(x.config(), 0L), -x.t());
}

}  // namespace

TypeIIPoint apply_mobius_point(const Mobius& g, const TypeIIPoint& x) {
  if (g.det().is_zero()) throw Error("singular Mobius transformation");
  if (g.is_affine()) return apply_affine(g.a / g.d, g.b / g.d, x);
  TypeIIPoint y = apply_affine(g.c, g.d, x);
  y = apply_inversion(y);
  return apply_affine(-(g.det() / g.c), g.a / g.c, y);
}

HomogeneousPair one_frame(const HomogeneousPair& m, const TypeIIPoint& x) {
  return normalize(conjugate(m, x.frame()));
}

HomogeneousPair two_frame(const HomogeneousPair& m, const TypeIIPoint& x, const TypeIIPoint& y) {
  return normalize(pre_post(y.frame().inverse(), m, x.frame()));
}

TypeIIPoint image_point(const HomogeneousPair& m, const TypeIIPoint& x, const ImageOptions& opt) {
  const FieldConfig* cfg = m.cfg;
  HomogeneousPair chi = one_frame(m, x);
  Mobius acc = x.frame();  // phi(x) = acc(chi(xi_g))
  long cap = -1;
  for (int step = 0;; ++step) {
    if (step >= opt.min_steps_before_cap) {
      if (cap < 0) {
        Rational ord = resultant(one_frame(m, x)).valuation().value();
        cap = 4 * (1 + static_cast<long>(ceil(ord).get_si()));
      }
      if (step > cap)
        throw CapExceededError("image_point: recentering loop exceeded " + std::to_string(cap) + " steps at " + x.str() +
                               "; current frame " + acc.str());
    }
    chi = normalize(chi);
    ReducedMap r = reduce_map(chi);
    if (!r.constant) break;
    if (r.constant_value.inf) {
      std::swap(chi.F, chi.G);
      acc = acc.compose(Mobius::inversion(cfg));
      continue;
    }
    const Residue& c = r.constant_value.a;
    if (!c.is_zero()) {
      Scalar lc = lift(cfg, c);
      for (std::size_t i = 0; i < chi.F.size(); ++i) chi.F[i] -= lc * chi.G[i];
      acc = acc.compose(Mobius::affine(Scalar(cfg, 1L), lc));
    }
    ValExp mu = ValExp::infinity();
    for (const auto& f : chi.F) mu = std::min(mu, f.valuation());
    const int k = scaled_exponent(cfg, mu.value());
    for (auto& f : chi.F) f = f.times_uniformizer_pow(-k);
    acc = acc.compose(Mobius::affine(Scalar::uniformizer_pow(cfg, k), Scalar(cfg, 0L)));
  }
  return apply_mobius_point(acc, TypeIIPoint::gauss(cfg));
}

}  // namespace berk
