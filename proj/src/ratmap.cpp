#include "berkred/ratmap.hpp"

#include <algorithm>

#include "berkred/expr.hpp"

namespace berk {

namespace {

std::string scalar_coeff(const Scalar& s) {
  std::string r = s.str();
  if (r.find(' ') != std::string::npos) return "(" + r + ")";
  return r;
}

std::string residue_coeff(const Residue& r) {
  std::string s = r.str();
  if (s.find(' ') != std::string::npos || s.find('/') != std::string::npos) return "(" + s + ")";
  return s;
}

Form form_mul(const Form& a, const Form& b) {
  const Scalar z = zero_like(a[0]);
  Form out(a.size() + b.size() - 1, z);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

// Powers a^0 .. a^n.
std::vector<Form> form_powers(const Form& a, int n) {
  std::vector<Form> out;
  out.push_back(Form{one_like(a[0])});
  for (int i = 1; i <= n; ++i) out.push_back(form_mul(out.back(), a));
  return out;
}

// f(A, B) for a form f of degree d and forms A, B of equal degree.
Form substitute(const Form& f, const std::vector<Form>& apow, const std::vector<Form>& bpow) {
  const int d = static_cast<int>(f.size()) - 1;
  const std::size_t n = static_cast<std::size_t>(d) * (apow[1].size() - 1) + 1;
  Form out(n, zero_like(f[0]));
  for (int i = 0; i <= d; ++i) {
    const Scalar& c = f[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    Form term = form_mul(apow[static_cast<std::size_t>(i)], bpow[static_cast<std::size_t>(d - i)]);
    for (std::size_t k = 0; k < term.size(); ++k)
      if (!term[k].is_zero()) out[k] += c * term[k];
  }
  return out;
}

Form lincomb(const Scalar& a, const Form& f, const Scalar& b, const Form& g) {
  Form out(f.size(), zero_like(a));
  for (std::size_t i = 0; i < f.size(); ++i) {
    Scalar x = zero_like(a);
    if (!a.is_zero() && !f[i].is_zero()) x = a * f[i];
    if (!b.is_zero() && !g[i].is_zero()) x += b * g[i];
    out[i] = x;
  }
  return out;
}

ResPoly gfpoly_to_res(const GFPoly& f) {
  std::vector<Residue> v;
  for (const auto& c : f.coeffs()) v.emplace_back(c);
  return ResPoly(std::move(v), Residue(f.zero()));
}

}  // namespace

Mobius Mobius::identity(const FieldConfig* cfg) {
  return Mobius{Scalar(cfg, 1L), Scalar(cfg, 0L), Scalar(cfg, 0L), Scalar(cfg, 1L)};
}

Mobius Mobius::affine(const Scalar& scale, const Scalar& shift) {
  const FieldConfig* cfg = scale.config();
  return Mobius{scale, shift, Scalar(cfg, 0L), Scalar(cfg, 1L)};
}

Mobius Mobius::inversion(const FieldConfig* cfg) {
  return Mobius{Scalar(cfg, 0L), Scalar(cfg, 1L), Scalar(cfg, 1L), Scalar(cfg, 0L)};
}

Mobius Mobius::inverse() const { return Mobius{d, -b, -c, a}; }

Mobius Mobius::compose(const Mobius& o) const {
  return Mobius{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

std::string Mobius::str() const {
  return "(" + scalar_coeff(a) + "*z + " + scalar_coeff(b) + ")/(" + scalar_coeff(c) + "*z + " + scalar_coeff(d) + ")";
}

HomogeneousPair::HomogeneousPair(Form f, Form g) : F(std::move(f)), G(std::move(g)) {
  if (F.empty() || F.size() != G.size()) throw Error("forms of unequal degree");
  cfg = F[0].config();
  d = static_cast<int>(F.size()) - 1;
}

std::string HomogeneousPair::str() const {
  Poly<Scalar> f(F, Scalar(cfg, 0L)), g(G, Scalar(cfg, 0L));
  return "(" + poly_to_string(f, "z", scalar_coeff) + ")/(" + poly_to_string(g, "z", scalar_coeff) + ")";
}

HomogeneousPair parse_map(const std::string& text, const FieldConfig* cfg) {
  ScalarFraction fr = parse_expression(text, cfg);
  const int d = std::max(fr.num.degree(), fr.den.degree());
  if (d < 1) throw Error("map has degree 0: " + text);
  Form F, G;
  for (int i = 0; i <= d; ++i) {
    F.push_back(fr.num[i]);
    G.push_back(fr.den[i]);
  }
  HomogeneousPair m(F, G);
  if (resultant(m).is_zero()) throw Error("degenerate map (zero resultant): " + text);
  return m;
}

Rational min_coeff_valuation(const HomogeneousPair& m) {
  ValExp best = ValExp::infinity();
  for (const auto* form : {&m.F, &m.G})
    for (const auto& c : *form) best = std::min(best, c.valuation());
  if (best.is_infinite()) throw Error("zero map");
  return best.value();
}

HomogeneousPair normalize(const HomogeneousPair& m) {
  Rational k = min_coeff_valuation(m) * m.cfg->e;
  int shift = -static_cast<int>(k.get_num().get_si());
  if (shift == 0) return m;
  HomogeneousPair r = m;
  for (auto* form : {&r.F, &r.G})
    for (auto& c : *form) c = c.times_uniformizer_pow(shift);
  return r;
}

Scalar form_resultant(const Form& f, const Form& g) {
  const int d = static_cast<int>(f.size()) - 1;
  const int e = static_cast<int>(g.size()) - 1;
  const int n = d + e;
  const Scalar zero = zero_like(f[0]);
  if (n == 0) return one_like(zero);
  std::vector<std::vector<Scalar>> a(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n), zero));
  // Descending coefficients in X.
  for (int r = 0; r < e; ++r)
    for (int k = 0; k <= d; ++k) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = f[static_cast<std::size_t>(d - k)];
  for (int r = 0; r < d; ++r)
    for (int k = 0; k <= e; ++k) a[static_cast<std::size_t>(e + r)][static_cast<std::size_t>(r + k)] = g[static_cast<std::size_t>(e - k)];
  Scalar det = one_like(zero);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return zero;
    if (piv != col) {
      std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(col)]);
      det = -det;
    }
    const auto& prow = a[static_cast<std::size_t>(col)];
    const Scalar inv = prow[static_cast<std::size_t>(col)].inverse();
    det *= prow[static_cast<std::size_t>(col)];
    for (int r = col + 1; r < n; ++r) {
      auto& row = a[static_cast<std::size_t>(r)];
      if (row[static_cast<std::size_t>(col)].is_zero()) continue;
      Scalar factor = row[static_cast<std::size_t>(col)] * inv;
      for (int k = col; k < n; ++k)
        if (!prow[static_cast<std::size_t>(k)].is_zero()) row[static_cast<std::size_t>(k)] -= factor * prow[static_cast<std::size_t>(k)];
    }
  }
  return det;
}

Scalar resultant(const HomogeneousPair& m) { return form_resultant(m.F, m.G); }

HomogeneousPair pre_post(const Mobius& g, const HomogeneousPair& m, const Mobius& h) {
  // Source substitution X -> aX + bY, Y -> cX + dY.
  Form A{h.b, h.a}, B{h.d, h.c};
  auto apow = form_powers(A, m.d), bpow = form_powers(B, m.d);
  Form F1 = substitute(m.F, apow, bpow);
  Form G1 = substitute(m.G, apow, bpow);
  return HomogeneousPair(lincomb(g.a, F1, g.b, G1), lincomb(g.c, F1, g.d, G1));
}

HomogeneousPair conjugate(const HomogeneousPair& m, const Mobius& g) { return pre_post(g.inverse(), m, g); }

HomogeneousPair compose(const HomogeneousPair& outer, const HomogeneousPair& inner) {
  auto apow = form_powers(inner.F, outer.d), bpow = form_powers(inner.G, outer.d);
  return HomogeneousPair(substitute(outer.F, apow, bpow), substitute(outer.G, apow, bpow));
}

HomogeneousPair iterate(const HomogeneousPair& m, int j, int degree_cap) {
  if (j < 1) throw Error("iterate needs j >= 1");
  long deg = 1;
  for (int i = 0; i < j; ++i) {
    deg *= m.d;
    if (deg > degree_cap)
      throw CapExceededError("degree " + std::to_string(m.d) + "^" + std::to_string(j) + " exceeds the degree cap " +
                             std::to_string(degree_cap));
  }
  HomogeneousPair acc = normalize(m);
  for (int i = 1; i < j; ++i) acc = normalize(compose(m, acc));
  return acc;
}

bool projectively_equal(const HomogeneousPair& a, const HomogeneousPair& b) {
  if (a.d != b.d || a.cfg != b.cfg) return false;
  std::vector<const Scalar*> x, y;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(a.d); ++i) {
    x.push_back(&a.F[i]);
    y.push_back(&b.F[i]);
  }
  for (std::size_t i = 0; i <= static_cast<std::size_t>(a.d); ++i) {
    x.push_back(&a.G[i]);
    y.push_back(&b.G[i]);
  }
  std::size_t k = 0;
  while (k < x.size() && x[k]->is_zero()) ++k;
  if (k == x.size() || y[k]->is_zero()) return false;
  Scalar ratio = *y[k] / *x[k];
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(*x[i] * ratio == *y[i])) return false;
  return true;
}

std::string ResForm::str(const std::string& var) const { return poly_to_string(f, var, residue_coeff); }

ResForm reduce_form(const Form& f, const FieldConfig* cfg) {
  std::vector<Residue> v;
  for (const auto& c : f) v.push_back(c.residue());
  return ResForm{ResPoly(std::move(v), residue_zero(cfg)), static_cast<int>(f.size()) - 1};
}

int form_multiplicity(const ResForm& F, const ClosedPoint& u) { return closed_point_multiplicity(F.f, F.d, u); }

Residue eval_form(const ResForm& F, const ResPoint& z) {
  if (z.inf) return F.f[F.d];
  return F.f(z.a);
}

ResPoint eval_forms(const ResForm& F, const ResForm& G, const ResPoint& z) {
  Residue a = eval_form(F, z), b = eval_form(G, z);
  if (b.is_zero()) {
    if (a.is_zero()) throw Error("reduced map undefined at " + z.str());
    return ResPoint::infinity();
  }
  return ResPoint::finite(a / b);
}

ReducedMap reduce_map(const HomogeneousPair& m) {
  ReducedMap r;
  r.d = m.d;
  r.F = reduce_form(m.F, m.cfg);
  r.G = reduce_form(m.G, m.cfg);
  if (r.F.is_zero() && r.G.is_zero()) throw Error("reduce_map needs a normalized pair");
  if (r.F.is_zero()) {
    r.H = r.G;
  } else if (r.G.is_zero()) {
    r.H = r.F;
  } else {
    ResPoly g = gcd(r.F.f, r.G.f);
    int inf = std::min(m.d - r.F.f.degree(), m.d - r.G.f.degree());
    r.H = ResForm{g, g.degree() + inf};
  }
  const int dd = m.d - r.H.d;
  r.Fd = ResForm{r.F.is_zero() ? r.F.f : exact_div(r.F.f, r.H.f), dd};
  r.Gd = ResForm{r.G.is_zero() ? r.G.f : exact_div(r.G.f, r.H.f), dd};
  {
    const Residue& lead = r.Gd.f.is_zero() ? r.Fd.f.lead() : r.Gd.f.lead();
    Residue inv = one_like(lead) / lead;
    r.Fd.f = r.Fd.f.scaled(inv);
    r.Gd.f = r.Gd.f.scaled(inv);
  }
  r.divided_degree = dd;
  r.constant = dd == 0;
  if (r.constant) {
    const Residue& a = r.Fd.f[0];
    const Residue& b = r.Gd.f[0];
    r.constant_value = b.is_zero() ? ResPoint::infinity() : ResPoint::finite(a / b);
  }
  return r;
}

ResPoint ReducedMap::eval(const ResPoint& z) const {
  if (constant) return constant_value;
  return eval_forms(Fd, Gd, z);
}

ClosedPoint ReducedMap::image(const ClosedPoint& u) const {
  ResPoint z = u.is_infinity() ? ResPoint::infinity() : ResPoint::finite(closed_point_roots(u).front());
  ResPoint w = eval(z);
  if (w.inf) return ClosedPoint::infinity();
  if (w.a.is_base()) {
    if (w.a.is_gf()) return ClosedPoint::rational(Residue(w.a.gf().to_prime()));
    return ClosedPoint::rational(w.a);
  }
  return ClosedPoint::from_irreducible(gfpoly_to_res(minimal_polynomial(w.a.gf())));
}

std::string ReducedMap::divided_str() const {
  if (constant) return "const " + constant_value.str();
  std::string n = Fd.str(), dn = Gd.str();
  if (dn == "1") return n;
  return "(" + n + ")/(" + dn + ")";
}

Scalar eval_affine(const Form& f, const Scalar& z) {
  Scalar acc = zero_like(z);
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * z + f[i];
  return acc;
}

}  // namespace berk
