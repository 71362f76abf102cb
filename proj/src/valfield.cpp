#include "berkred/valfield.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace berk {

namespace {

std::mutex config_mutex;

std::string rational_coeff(const Rational& q) { return to_string(q); }

std::string qs_coeff(const Qs& q) {
  std::string s = to_string(q);
  if (s.find(' ') != std::string::npos || s.find('/') != std::string::npos) return "(" + s + ")";
  return s;
}

Rational padic_pow(unsigned long p, int k) {
  Rational r(1);
  Rational base = k >= 0 ? Rational(static_cast<long>(p)) : frac(1, static_cast<long>(p));
  for (int i = 0; i < (k >= 0 ? k : -k); ++i) r *= base;
  return r;
}

}  // namespace

std::string to_string(const Qs& q, const std::string& var) {
  return ratfunc_to_string(q, var, rational_coeff);
}

const FieldConfig* field_config(Backend backend, unsigned long p, int e) {
  if (e < 1) throw Error("ramification index must be >= 1");
  if (backend == Backend::MixedChar) {
    gf_prime(p);  // validates primality
  } else {
    p = 0;
  }
  static std::map<std::tuple<int, unsigned long, int>, std::unique_ptr<FieldConfig>> registry;
  std::lock_guard<std::mutex> lock(config_mutex);
  auto& slot = registry[{static_cast<int>(backend), p, e}];
  if (!slot) slot = std::make_unique<FieldConfig>(FieldConfig{backend, p, e});
  return slot.get();
}

const Rational& ValExp::value() const {
  if (!q_) throw Error("valuation of zero is infinite");
  return *q_;
}

// ---------------------------------------------------------------- Residue

bool Residue::is_zero() const {
  return is_gf() ? gf().is_zero() : qs().is_zero();
}

std::string Residue::str() const { return is_gf() ? gf().str() : to_string(qs()); }

Residue Residue::operator-() const {
  if (is_gf()) return Residue(-gf());
  return Residue(-qs());
}

namespace {
void same_kind(const Residue& a, const Residue& b) {
  if (a.is_gf() != b.is_gf()) throw Error("mismatched residue fields");
}
}  // namespace

Residue operator+(const Residue& a, const Residue& b) {
  same_kind(a, b);
  if (a.is_gf()) return Residue(a.gf() + b.gf());
  return Residue(a.qs() + b.qs());
}

Residue operator-(const Residue& a, const Residue& b) {
  same_kind(a, b);
  if (a.is_gf()) return Residue(a.gf() - b.gf());
  return Residue(a.qs() - b.qs());
}

Residue operator*(const Residue& a, const Residue& b) {
  same_kind(a, b);
  if (a.is_gf()) return Residue(a.gf() * b.gf());
  return Residue(a.qs() * b.qs());
}

Residue operator/(const Residue& a, const Residue& b) {
  same_kind(a, b);
  if (a.is_gf()) return Residue(a.gf() / b.gf());
  return Residue(a.qs() / b.qs());
}

bool operator==(const Residue& a, const Residue& b) {
  if (a.is_gf() != b.is_gf()) return false;
  if (a.is_gf()) return a.gf() == b.gf();
  return a.qs() == b.qs();
}

bool operator<(const Residue& a, const Residue& b) {
  if (a.is_gf() != b.is_gf()) return a.is_gf();
  if (a.is_gf()) {
    if (a.gf().context() != b.gf().context())
      return a.gf().context()->degree < b.gf().context()->degree;
    return a.gf() < b.gf();
  }
  return to_string(a.qs()) < to_string(b.qs());
}

Residue zero_like(const Residue& a) {
  if (a.is_gf()) return Residue(zero_like(a.gf()));
  return Residue(Qs(Rational(0)));
}

Residue one_like(const Residue& a) {
  if (a.is_gf()) return Residue(one_like(a.gf()));
  return Residue(Qs::constant(Rational(1)));
}

Residue from_int_like(const Residue& a, long n) {
  if (a.is_gf()) return Residue(from_int_like(a.gf(), n));
  return Residue(Qs::constant(Rational(n)));
}

Residue residue_zero(const FieldConfig* cfg) { return residue_from_int(cfg, 0); }

Residue residue_from_int(const FieldConfig* cfg, long n) {
  if (cfg->mixed()) return Residue(GF(gf_prime(cfg->p), n));
  return Residue(Qs::constant(Rational(n)));
}

// ----------------------------------------------------------------- Scalar

Scalar::Scalar(const FieldConfig* cfg, long n) : Scalar(cfg, Rational(n)) {}

Scalar::Scalar(const FieldConfig* cfg, const Rational& q) : cfg_(cfg) {
  if (!cfg_) throw Error("scalar without field configuration");
  if (cfg_->mixed()) {
    std::vector<Rational> c(static_cast<std::size_t>(cfg_->e), Rational(0));
    c[0] = q;
    v_ = std::move(c);
  } else {
    v_ = RatFunc<Qs>::constant(Qs::constant(q));
  }
}

Scalar Scalar::from_padic_coeffs(const FieldConfig* cfg, std::vector<Rational> c) {
  if (!cfg->mixed() || c.size() != static_cast<std::size_t>(cfg->e)) throw Error("bad p-adic coefficient vector");
  Scalar r;
  r.cfg_ = cfg;
  r.v_ = std::move(c);
  return r;
}

Scalar Scalar::from_laurent(const FieldConfig* cfg, RatFunc<Qs> f) {
  if (cfg->mixed()) throw Error("laurent value in a p-adic field");
  Scalar r;
  r.cfg_ = cfg;
  r.v_ = std::move(f);
  return r;
}

Scalar Scalar::uniformizer_pow(const FieldConfig* cfg, int k) { return Scalar(cfg, 1L).times_uniformizer_pow(k); }

Scalar Scalar::param_t(const FieldConfig* cfg) {
  if (cfg->mixed()) throw Error("'t' is only available in the laurent backend");
  return uniformizer_pow(cfg, cfg->e);
}

Scalar Scalar::param_s(const FieldConfig* cfg) {
  if (cfg->mixed()) throw Error("'s' is only available in the laurent backend");
  return from_laurent(cfg, RatFunc<Qs>::constant(Qs::variable(Rational(0))));
}

bool Scalar::is_zero() const {
  if (!cfg_) throw Error("uninitialized scalar");
  if (cfg_->mixed()) {
    const auto& c = padic_coeffs();
    return std::all_of(c.begin(), c.end(), [](const Rational& x) { return sgn(x) == 0; });
  }
  return laurent().is_zero();
}

ValExp Scalar::valuation() const {
  if (is_zero()) return ValExp::infinity();
  if (cfg_->mixed()) {
    const auto& c = padic_coeffs();
    std::optional<Rational> best;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (sgn(c[i]) == 0) continue;
      Rational v = Rational(ord_p(c[i], cfg_->p)) + frac(static_cast<long>(i), cfg_->e);
      if (!best || v < *best) best = v;
    }
    return ValExp(*best);
  }
  return ValExp(frac(laurent().ord0(), cfg_->e));
}

Residue Scalar::residue() const {
  if (valuation() < ValExp(Rational(0))) throw Error("residue of an element of negative valuation");
  if (cfg_->mixed()) return Residue(GF(gf_prime(cfg_->p), static_cast<std::int64_t>(mod_p(padic_coeffs()[0], cfg_->p))));
  if (is_zero()) return residue_zero(cfg_);
  return Residue(laurent().value_at_zero());
}

Scalar Scalar::times_uniformizer_pow(int k) const {
  if (k == 0 || is_zero()) return *this;
  if (!cfg_->mixed()) return from_laurent(cfg_, laurent().times_x_pow(k));
  const int e = cfg_->e;
  int q = k / e, r = k % e;
  if (r < 0) {
    r += e;
    --q;
  }
  const auto& c = padic_coeffs();
  std::vector<Rational> out(static_cast<std::size_t>(e), Rational(0));
  Rational pq = padic_pow(cfg_->p, q);
  Rational pq1 = pq * static_cast<long>(cfg_->p);
  for (int i = 0; i < e; ++i) {
    int j = i + r;
    if (j >= e)
      out[static_cast<std::size_t>(j - e)] = c[static_cast<std::size_t>(i)] * pq1;
    else
      out[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(i)] * pq;
  }
  return from_padic_coeffs(cfg_, std::move(out));
}

const FieldConfig* Scalar::common(const Scalar& a, const Scalar& b) {
  if (!a.cfg_ || !b.cfg_) throw Error("uninitialized scalar");
  if (a.cfg_ != b.cfg_) throw Error("scalars from different field configurations");
  return a.cfg_;
}

Scalar Scalar::operator-() const {
  if (cfg_->mixed()) {
    auto c = padic_coeffs();
    for (auto& x : c) x = -x;
    return from_padic_coeffs(cfg_, std::move(c));
  }
  return from_laurent(cfg_, -laurent());
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  const FieldConfig* cfg = Scalar::common(a, b);
  if (cfg->mixed()) {
    auto c = a.padic_coeffs();
    const auto& d = b.padic_coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += d[i];
    return Scalar::from_padic_coeffs(cfg, std::move(c));
  }
  return Scalar::from_laurent(cfg, a.laurent() + b.laurent());
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  const FieldConfig* cfg = Scalar::common(a, b);
  if (!cfg->mixed()) return Scalar::from_laurent(cfg, a.laurent() * b.laurent());
  const auto& x = a.padic_coeffs();
  const auto& y = b.padic_coeffs();
  const std::size_t e = x.size();
  std::vector<Rational> out(e, Rational(0));
  const Rational p(static_cast<long>(cfg->p));
  for (std::size_t i = 0; i < e; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < e; ++j) {
      if (sgn(y[j]) == 0) continue;
      if (i + j >= e)
        out[i + j - e] += x[i] * y[j] * p;
      else
        out[i + j] += x[i] * y[j];
    }
  }
  return Scalar::from_padic_coeffs(cfg, std::move(out));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("division by zero");
  if (!cfg_->mixed()) return from_laurent(cfg_, RatFunc<Qs>::constant(Qs::constant(Rational(1))) / laurent());
  const auto& c = padic_coeffs();
  const int e = cfg_->e;
  int nonzero = 0, idx = 0;
  for (int i = 0; i < e; ++i)
    if (sgn(c[static_cast<std::size_t>(i)]) != 0) {
      ++nonzero;
      idx = i;
    }
  if (nonzero == 1) {
    Rational inv = 1 / c[static_cast<std::size_t>(idx)];
    return Scalar(cfg_, inv).times_uniformizer_pow(-idx);
  }
  // Invert in Q[x]/(x^e - p) with the extended Euclidean algorithm.
  Poly<Rational> a(c, Rational(0));
  std::vector<Rational> mv(static_cast<std::size_t>(e) + 1, Rational(0));
  mv[0] = -Rational(static_cast<long>(cfg_->p));
  mv[static_cast<std::size_t>(e)] = 1;
  Poly<Rational> m(mv, Rational(0));
  auto [g, s, t] = ext_gcd(a, m);
  if (g.degree() != 0) throw Error("non-invertible element in Q[pi]");
  Poly<Rational> inv = s % m;
  std::vector<Rational> out(static_cast<std::size_t>(e), Rational(0));
  for (int i = 0; i <= inv.degree(); ++i) out[static_cast<std::size_t>(i)] = inv[i];
  return from_padic_coeffs(cfg_, std::move(out));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  Scalar::common(a, b);
  return a * b.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  const FieldConfig* cfg = Scalar::common(a, b);
  if (cfg->mixed()) return a.padic_coeffs() == b.padic_coeffs();
  return a.laurent() == b.laurent();
}

std::string Scalar::str() const {
  if (!cfg_) return "?";
  if (cfg_->mixed()) {
    Poly<Rational> f(padic_coeffs(), Rational(0));
    return poly_to_string(f, "pi", rational_coeff);
  }
  const std::string var = cfg_->e == 1 ? "t" : "pi";
  return ratfunc_to_string(laurent(), var, qs_coeff);
}

std::string to_string(const Scalar& x) { return x.str(); }

Residue reduce_unit(const Scalar& x) {
  ValExp v = x.valuation();
  if (!(v == ValExp(Rational(0)))) throw Error("reduce_unit: valuation " + v.str() + " is not 0");
  return x.residue();
}

Scalar lift(const FieldConfig* cfg, const Residue& r) {
  if (cfg->mixed()) {
    if (!r.is_gf() || !r.gf().in_prime_field()) throw Error("cannot lift a residue outside F_p");
    return Scalar(cfg, Rational(static_cast<unsigned long>(r.gf().prime_value())));
  }
  if (r.is_gf()) throw Error("finite field residue in the laurent backend");
  return Scalar::from_laurent(cfg, RatFunc<Qs>::constant(r.qs()));
}

// ----------------------------------------------------------- ClosedPoint

ClosedPoint ClosedPoint::infinity() {
  ClosedPoint c;
  c.inf_ = true;
  return c;
}

ClosedPoint ClosedPoint::rational(const Residue& a) {
  ClosedPoint c;
  c.f_ = ResPoly(std::vector<Residue>{-a, one_like(a)}, zero_like(a));
  return c;
}

ClosedPoint ClosedPoint::from_irreducible(ResPoly f) {
  if (f.degree() < 1) throw Error("closed point needs a nonconstant polynomial");
  ClosedPoint c;
  c.f_ = f.monic();
  return c;
}

Residue ClosedPoint::value() const {
  if (inf_ || f_.degree() != 1) throw Error("closed point is not a finite rational point");
  return -f_[0];
}

std::string ClosedPoint::str() const {
  if (inf_) return "inf";
  if (f_.degree() == 1) return value().str();
  return "[" + poly_to_string(f_, "x", [](const Residue& r) { return r.str(); }) + "]";
}

bool operator==(const ClosedPoint& a, const ClosedPoint& b) {
  if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
  return a.f_ == b.f_;
}

bool operator<(const ClosedPoint& a, const ClosedPoint& b) {
  if (a.inf_ || b.inf_) return a.inf_ && !b.inf_;
  if (a.f_.degree() != b.f_.degree()) return a.f_.degree() < b.f_.degree();
  for (int i = a.f_.degree(); i >= 0; --i) {
    if (a.f_[i] < b.f_[i]) return true;
    if (b.f_[i] < a.f_[i]) return false;
  }
  return false;
}

namespace {

ResPoly gf_to_res(const GFPoly& f) {
  std::vector<Residue> v;
  for (const auto& c : f.coeffs()) v.emplace_back(c);
  return ResPoly(std::move(v), Residue(f.zero()));
}

GFPoly res_to_gf(const ResPoly& f) {
  const GF z = f.zero().gf().to_prime();
  std::vector<GF> v;
  for (const auto& c : f.coeffs()) v.push_back(c.gf().to_prime());
  return GFPoly(std::move(v), z);
}

Poly<Qs> res_to_qs(const ResPoly& f) {
  std::vector<Qs> v;
  for (const auto& c : f.coeffs()) v.push_back(c.qs());
  return Poly<Qs>(std::move(v), Qs(Rational(0)));
}

// Square root of a polynomial over Q, if it is a perfect square.
std::optional<Poly<Rational>> poly_sqrt(const Poly<Rational>& f) {
  if (f.is_zero()) return f;
  if (f.degree() % 2) return std::nullopt;
  const Rational& lead = f.lead();
  if (lead < 0) return std::nullopt;
  mpz_class n = lead.get_num(), d = lead.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  const int n2 = f.degree() / 2;
  std::vector<Rational> r(static_cast<std::size_t>(n2) + 1, Rational(0));
  r[static_cast<std::size_t>(n2)] = Rational(rn, rd);
  // Solve top-down: coefficient of x^(n2 + k) in r^2 determines r[k].
  for (int k = n2 - 1; k >= 0; --k) {
    Rational acc = f[n2 + k];
    for (int i = k + 1; i <= n2; ++i) {
      int j = n2 + k - i;
      if (j < k || j > n2) continue;
      if (j == k) continue;
      acc -= r[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(j)];
    }
    r[static_cast<std::size_t>(k)] = acc / (2 * r[static_cast<std::size_t>(n2)]);
  }
  Poly<Rational> root(r, Rational(0));
  if (!(root * root == f)) return std::nullopt;
  return root;
}

}  // namespace

std::optional<Qs> qs_sqrt(const Qs& q) {
  if (q.is_zero()) return q;
  // num/den with den monic: sqrt(num*den)/den avoids a square leading constant on den.
  auto rn = poly_sqrt(q.num());
  auto rd = poly_sqrt(q.den());
  if (!rn || !rd) return std::nullopt;
  return Qs(*rn, *rd);
}

std::vector<std::pair<ClosedPoint, int>> residue_factor(const ResPoly& f, int d) {
  if (f.is_zero()) throw Error("residue_factor of the zero form");
  std::vector<std::pair<ClosedPoint, int>> out;
  if (d > f.degree()) out.emplace_back(ClosedPoint::infinity(), d - f.degree());
  if (f.degree() <= 0) return out;
  if (f.zero().is_gf()) {
    for (const auto& [g, mult] : factor_fp(res_to_gf(f))) out.emplace_back(ClosedPoint::from_irreducible(gf_to_res(g)), mult);
  } else {
    for (const auto& [part, mult] : squarefree_char0(res_to_qs(f))) {
      if (part.degree() == 1) {
        out.emplace_back(ClosedPoint::rational(Residue(-part[0] / part[1])), mult);
        continue;
      }
      if (part.degree() == 2) {
        Poly<Qs> m = part.monic();
        Qs b = m[1], c = m[0];
        Qs disc = b * b - Qs::constant(Rational(4)) * c;
        if (auto r = qs_sqrt(disc)) {
          Qs half = Qs::constant(frac(1, 2));
          out.emplace_back(ClosedPoint::rational(Residue((-b + *r) * half)), mult);
          out.emplace_back(ClosedPoint::rational(Residue((-b - *r) * half)), mult);
          continue;
        }
      }
      throw IrrationalDirectionError("residue factor " + poly_to_string(part, "x", qs_coeff) +
                                     " has no certified roots in Q(s)");
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

int closed_point_multiplicity(const ResPoly& f, int d, const ClosedPoint& u) {
  if (f.is_zero()) throw Error("multiplicity in the zero form");
  if (u.is_infinity()) return d - f.degree();
  ResPoly g = f;
  int k = 0;
  for (;;) {
    auto [q, r] = divmod(g, u.minpoly());
    if (!r.is_zero()) return k;
    g = q;
    ++k;
  }
}

std::vector<Residue> closed_point_roots(const ClosedPoint& u) {
  if (u.is_infinity()) throw Error("closed_point_roots at infinity");
  if (u.degree() == 1) return {u.value()};
  std::vector<Residue> out;
  for (const auto& r : roots_in_extension(res_to_gf(u.minpoly()), u.degree())) out.emplace_back(r);
  return out;
}

}  // namespace berk
