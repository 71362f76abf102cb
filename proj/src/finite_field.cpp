#include "berkred/finite_field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace berk {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t k, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (k) {
    if (k & 1u) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    k >>= 1u;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::mutex registry_mutex;
std::map<std::pair<std::uint64_t, int>, std::unique_ptr<GFContext>>& registry() {
  static std::map<std::pair<std::uint64_t, int>, std::unique_ptr<GFContext>> r;
  return r;
}

GFPoly from_coeffs(const GFContext* ctx, const std::vector<std::uint64_t>& c) {
  std::vector<GF> v;
  v.reserve(c.size());
  for (auto x : c) v.emplace_back(ctx, static_cast<std::int64_t>(x));
  return GFPoly(std::move(v), GF(ctx, 0));
}

}  // namespace

std::uint64_t GFContext::cardinality() const {
  std::uint64_t q = 1;
  for (int i = 0; i < degree; ++i) {
    if (q > UINT64_MAX / p) throw Error("finite field too large");
    q *= p;
  }
  return q;
}

const GFContext* gf_prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error("residue characteristic " + std::to_string(p) + " is not prime");
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto& slot = registry()[{p, 1}];
  if (!slot) {
    slot = std::make_unique<GFContext>();
    slot->p = p;
    slot->degree = 1;
    slot->modulus = {0, 1};
  }
  return slot.get();
}

const GFContext* gf_extension(std::uint64_t p, int m) {
  if (m < 1) throw Error("extension degree must be positive");
  if (m == 1) return gf_prime(p);
  const GFContext* base = gf_prime(p);
  {
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto it = registry().find({p, m});
    if (it != registry().end()) return it->second.get();
  }
  // Enumerate monic candidates of degree m in lexicographic order.
  std::vector<std::uint64_t> c(static_cast<std::size_t>(m) + 1, 0);
  c[static_cast<std::size_t>(m)] = 1;
  for (;;) {
    GFPoly f = from_coeffs(base, c);
    if (c[0] != 0 && is_irreducible_fp(f)) break;
    std::size_t i = 0;
    while (i < static_cast<std::size_t>(m)) {
      if (++c[i] < p) break;
      c[i] = 0;
      ++i;
    }
    if (i == static_cast<std::size_t>(m)) throw Error("no irreducible polynomial found");
  }
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto& slot = registry()[{p, m}];
  if (!slot) {
    slot = std::make_unique<GFContext>();
    slot->p = p;
    slot->degree = m;
    slot->modulus = c;
  }
  return slot.get();
}

GF::GF(const GFContext* ctx, std::int64_t value) : ctx_(ctx) {
  if (!ctx_) throw Error("finite field element without context");
  v_.assign(static_cast<std::size_t>(ctx_->degree), 0);
  auto p = static_cast<std::int64_t>(ctx_->p);
  std::int64_t r = value % p;
  if (r < 0) r += p;
  v_[0] = static_cast<std::uint64_t>(r);
}

GF::GF(const GFContext* ctx, std::vector<std::uint64_t> coords) : ctx_(ctx), v_(std::move(coords)) {
  if (!ctx_) throw Error("finite field element without context");
  if (v_.size() != static_cast<std::size_t>(ctx_->degree)) throw Error("finite field coordinate size");
  for (auto& x : v_) x %= ctx_->p;
}

bool GF::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](std::uint64_t x) { return x == 0; });
}

bool GF::in_prime_field() const {
  return std::all_of(v_.begin() + (v_.empty() ? 0 : 1), v_.end(), [](std::uint64_t x) { return x == 0; });
}

std::uint64_t GF::prime_value() const {
  if (!in_prime_field()) throw Error("element is not in the prime field");
  return v_.empty() ? 0 : v_[0];
}

GF GF::embed(const GFContext* ext) const {
  if (ext == ctx_) return *this;
  if (ext->p != ctx_->p || !in_prime_field()) throw Error("cannot embed finite field element");
  return GF(ext, static_cast<std::int64_t>(prime_value()));
}

GF GF::to_prime() const { return GF(gf_prime(ctx_->p), static_cast<std::int64_t>(prime_value())); }

std::pair<GF, GF> GF::promote(const GF& a, const GF& b) {
  if (a.ctx_ == b.ctx_) return {a, b};
  if (!a.ctx_ || !b.ctx_ || a.ctx_->p != b.ctx_->p) throw Error("mismatched finite fields");
  if (a.ctx_->degree == 1 || a.in_prime_field()) {
    if (b.ctx_->degree >= a.ctx_->degree) return {a.embed(b.ctx_), b};
  }
  if (b.ctx_->degree == 1 || b.in_prime_field()) return {a, b.embed(a.ctx_)};
  throw Error("mismatched finite field extensions");
}

GF operator+(const GF& x, const GF& y) {
  auto [a, b] = GF::promote(x, y);
  GF r = a;
  for (std::size_t i = 0; i < r.v_.size(); ++i) r.v_[i] = (a.v_[i] + b.v_[i]) % a.ctx_->p;
  return r;
}

GF operator-(const GF& x, const GF& y) { return x + (-y); }

GF GF::operator-() const {
  GF r = *this;
  for (auto& c : r.v_) c = c == 0 ? 0 : ctx_->p - c;
  return r;
}

GF operator*(const GF& x, const GF& y) {
  auto [a, b] = GF::promote(x, y);
  const auto p = a.ctx_->p;
  const auto m = static_cast<std::size_t>(a.ctx_->degree);
  std::vector<std::uint64_t> prod(2 * m - 1, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (!a.v_[i]) continue;
    for (std::size_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + mulmod(a.v_[i], b.v_[j], p)) % p;
  }
  const auto& mod = a.ctx_->modulus;
  for (std::size_t k = prod.size(); k-- > m;) {
    std::uint64_t top = prod[k];
    if (!top) continue;
    prod[k] = 0;
    for (std::size_t j = 0; j < m; ++j) {
      std::uint64_t sub = mulmod(top, mod[j], p);
      prod[k - m + j] = (prod[k - m + j] + p - sub) % p;
    }
  }
  prod.resize(m);
  return GF(a.ctx_, std::move(prod));
}

GF GF::pow(std::uint64_t k) const {
  GF r(ctx_, 1);
  GF b = *this;
  while (k) {
    if (k & 1u) r = r * b;
    b = b * b;
    k >>= 1u;
  }
  return r;
}

GF GF::inverse() const {
  if (is_zero()) throw Error("division by zero in finite field");
  if (ctx_->degree == 1) return GF(ctx_, static_cast<std::int64_t>(powmod(v_[0], ctx_->p - 2, ctx_->p)));
  return pow(ctx_->cardinality() - 2);
}

GF operator/(const GF& x, const GF& y) {
  auto [a, b] = GF::promote(x, y);
  return a * b.inverse();
}

bool operator==(const GF& x, const GF& y) {
  if (x.ctx_ == y.ctx_) return x.v_ == y.v_;
  if (!x.ctx_ || !y.ctx_ || x.ctx_->p != y.ctx_->p) return false;
  if (x.in_prime_field() && y.in_prime_field()) return x.prime_value() == y.prime_value();
  return false;
}

bool operator<(const GF& a, const GF& b) {
  return std::lexicographical_compare(a.v_.rbegin(), a.v_.rend(), b.v_.rbegin(), b.v_.rend());
}

std::string GF::str() const {
  if (!ctx_) return "?";
  if (ctx_->degree == 1 || in_prime_field()) return std::to_string(v_.empty() ? 0 : v_[0]);
  // Elements of extensions print as polynomials in the generator "g".
  std::string out;
  for (std::size_t i = v_.size(); i-- > 0;) {
    if (!v_[i]) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += std::to_string(v_[i]);
      continue;
    }
    if (v_[i] != 1) out += std::to_string(v_[i]) + "*";
    out += "g";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

bool lex_less(const GFPoly& a, const GFPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

namespace {

// f^(1/p) for a polynomial in x^p over F_p.
GFPoly pth_root(const GFPoly& f, std::uint64_t p) {
  std::vector<GF> v;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) v.push_back(f[i]);
  return GFPoly(std::move(v), f.zero());
}

// Squarefree decomposition in characteristic p.
void squarefree_fp(const GFPoly& f, int mult, std::vector<std::pair<GFPoly, int>>& out) {
  const std::uint64_t p = f.zero().context()->p;
  if (f.degree() <= 0) return;
  GFPoly d = f.derivative();
  if (d.is_zero()) {
    squarefree_fp(pth_root(f, p), mult * static_cast<int>(p), out);
    return;
  }
  GFPoly c = gcd(f, d);
  GFPoly w = exact_div(f.monic(), c);
  int i = 1;
  while (w.degree() > 0) {
    GFPoly y = gcd(w, c);
    GFPoly z = exact_div(w, y);
    if (z.degree() > 0) out.emplace_back(z.monic(), i * mult);
    ++i;
    w = y;
    c = exact_div(c, y);
  }
  if (c.degree() > 0) squarefree_fp(pth_root(c, p), mult * static_cast<int>(p), out);
}

// Nullspace basis of an n x n matrix over F_p.
std::vector<std::vector<std::uint64_t>> nullspace(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p) {
  const std::size_t n = a.size();
  std::vector<int> pivot_col_of_row;
  std::vector<bool> is_pivot(n, false);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t sel = row;
    while (sel < n && a[sel][col] == 0) ++sel;
    if (sel == n) continue;
    std::swap(a[sel], a[row]);
    std::uint64_t inv = powmod(a[row][col], p - 2, p);
    for (auto& x : a[row]) x = mulmod(x, inv, p);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][col] == 0) continue;
      std::uint64_t f = a[r][col];
      for (std::size_t k = 0; k < n; ++k) a[r][k] = (a[r][k] + p - mulmod(f, a[row][k], p)) % p;
    }
    pivot_col_of_row.push_back(static_cast<int>(col));
    is_pivot[col] = true;
    ++row;
  }
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint64_t> v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r)
      v[static_cast<std::size_t>(pivot_col_of_row[r])] = (p - a[r][free]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

// Berlekamp splitting of a monic squarefree polynomial.
std::vector<GFPoly> berlekamp(const GFPoly& f) {
  const GF zero = f.zero();
  const GFContext* ctx = zero.context();
  const std::uint64_t p = ctx->p;
  const int n = f.degree();
  if (n <= 1) return {f};
  GFPoly x = GFPoly::variable(zero);
  // xp = x^p mod f by repeated squaring.
  GFPoly xp = GFPoly::constant(GF(ctx, 1));
  {
    GFPoly base = x;
    std::uint64_t k = p;
    while (k) {
      if (k & 1u) xp = (xp * base) % f;
      base = (base * base) % f;
      k >>= 1u;
    }
  }
  std::vector<std::vector<std::uint64_t>> q(static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
  GFPoly row = GFPoly::constant(GF(ctx, 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = row[j].prime_value();
    row = (row * xp) % f;
  }
  // M = Q^T - I
  std::vector<std::vector<std::uint64_t>> m(static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::uint64_t v = q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (i == j) v = (v + p - 1) % p;
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    }
  auto basis = nullspace(m, p);
  const std::size_t k = basis.size();
  std::vector<GFPoly> factors{f};
  for (const auto& vec : basis) {
    if (factors.size() == k) break;
    GFPoly g = from_coeffs(ctx, vec);
    if (g.degree() <= 0) continue;
    std::vector<GFPoly> next;
    for (const auto& h : factors) {
      if (h.degree() <= 1) {
        next.push_back(h);
        continue;
      }
      GFPoly rest = h;
      for (std::uint64_t c = 0; c < p && rest.degree() > 1; ++c) {
        GFPoly gc = g - GFPoly::constant(GF(ctx, static_cast<std::int64_t>(c)));
        GFPoly d = gcd(rest, gc);
        if (d.degree() > 0 && d.degree() < rest.degree()) {
          next.push_back(d);
          rest = exact_div(rest, d);
        }
      }
      next.push_back(rest.monic());
    }
    factors = std::move(next);
  }
  if (factors.size() != k) throw Error("Berlekamp splitting incomplete");
  return factors;
}

}  // namespace

std::vector<std::pair<GFPoly, int>> factor_fp(const GFPoly& f) {
  if (f.is_zero()) throw Error("cannot factor the zero polynomial");
  if (f.zero().context()->degree != 1) throw Error("factor_fp expects prime-field coefficients");
  std::vector<std::pair<GFPoly, int>> sqf;
  squarefree_fp(f.monic(), 1, sqf);
  std::map<std::vector<std::uint64_t>, std::pair<GFPoly, int>> merged;
  for (const auto& [part, mult] : sqf) {
    for (const auto& irr : berlekamp(part)) {
      std::vector<std::uint64_t> key;
      for (const auto& c : irr.coeffs()) key.push_back(c.prime_value());
      auto it = merged.find(key);
      if (it == merged.end())
        merged.emplace(key, std::make_pair(irr, mult));
      else
        it->second.second += mult;
    }
  }
  std::vector<std::pair<GFPoly, int>> out;
  for (auto& [key, val] : merged) out.push_back(val);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  return out;
}

bool is_irreducible_fp(const GFPoly& f) {
  if (f.degree() <= 0) return false;
  auto fac = factor_fp(f);
  return fac.size() == 1 && fac[0].second == 1;
}

std::vector<GF> roots_in_extension(const GFPoly& f, int m) {
  const std::uint64_t p = f.zero().context()->p;
  const GFContext* ext = gf_extension(p, m);
  const std::uint64_t q = ext->cardinality();
  if (q > 2000000) throw Error("extension field too large for exhaustive root search");
  std::vector<GF> coeffs;
  for (const auto& c : f.coeffs()) coeffs.push_back(c.embed(ext));
  std::vector<GF> roots;
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(m), 0);
  for (std::uint64_t idx = 0; idx < q; ++idx) {
    GF x(ext, digits);
    GF acc(ext, 0);
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    if (acc.is_zero()) roots.push_back(x);
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < p) break;
      digits[i] = 0;
    }
  }
  return roots;
}

GFPoly minimal_polynomial(const GF& a) {
  const GFContext* ctx = a.context();
  const GFContext* base = gf_prime(ctx->p);
  std::vector<GF> conj{a};
  GF cur = a.pow(ctx->p);
  while (!(cur == a)) {
    conj.push_back(cur);
    cur = cur.pow(ctx->p);
  }
  Poly<GF> acc = Poly<GF>::constant(GF(ctx, 1));
  for (const auto& c : conj) acc *= Poly<GF>(std::vector<GF>{-c, GF(ctx, 1)}, GF(ctx, 0));
  std::vector<GF> v;
  for (const auto& c : acc.coeffs()) v.push_back(c.to_prime());
  return GFPoly(std::move(v), GF(base, 0));
}

}  // namespace berk
