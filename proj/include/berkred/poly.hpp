#pragma once

#include <cstddef>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "berkred/rational.hpp"

namespace berk {

namespace detail {
template <class R>
bool coeff_is_zero(const R& r) {
  return is_zero(r);
}
}  // namespace detail

// Dense univariate polynomial over a field R.
//
// R must provide + - * / ==, unary minus and the free functions
// is_zero(r), zero_like(r), one_like(r) and from_int_like(r, n), found by
// ADL. Every polynomial carries a zero prototype so that fields whose
// elements depend on a runtime context (finite fields) can build constants.
template <class R>
class Poly {
public:
  Poly() = default;
  explicit Poly(R zero) : zero_(std::move(zero)) {}
  Poly(std::vector<R> coeffs, R zero) : c_(std::move(coeffs)), zero_(std::move(zero)) { trim(); }

  static Poly constant(const R& c) { return Poly(std::vector<R>{c}, zero_like(c)); }
  static Poly monomial(const R& c, int k) {
    R z = zero_like(c);
    std::vector<R> v(static_cast<std::size_t>(k) + 1, z);
    v[static_cast<std::size_t>(k)] = c;
    return Poly(std::move(v), z);
  }
  // The polynomial x.
  static Poly variable(const R& like) { return monomial(one_like(like), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const R& operator[](int i) const {
    return (i < 0 || i > degree()) ? zero_ : c_[static_cast<std::size_t>(i)];
  }
  const R& lead() const { return c_.empty() ? zero_ : c_.back(); }
  const std::vector<R>& coeffs() const { return c_; }
  const R& zero() const { return zero_; }

  // Index of the lowest nonzero coefficient; -1 for the zero polynomial.
  int low_degree() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!berk_is_zero(c_[i])) return static_cast<int>(i);
    return -1;
  }

  bool is_constant() const { return degree() <= 0; }
  bool is_one() const { return degree() == 0 && c_[0] == one_like(zero_); }

  R operator()(const R& x) const {
    R acc = zero_;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Poly derivative() const {
    std::vector<R> v;
    for (std::size_t i = 1; i < c_.size(); ++i)
      v.push_back(c_[i] * from_int_like(zero_, static_cast<long>(i)));
    return Poly(std::move(v), zero_);
  }

  Poly monic() const {
    if (c_.empty()) return *this;
    R inv = one_like(zero_) / c_.back();
    return scaled(inv);
  }

  Poly scaled(const R& a) const {
    std::vector<R> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(x * a);
    return Poly(std::move(v), zero_);
  }

  // Multiplication by x^k, k >= 0.
  Poly shifted(int k) const {
    if (c_.empty()) return *this;
    std::vector<R> v(static_cast<std::size_t>(k), zero_);
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(std::move(v), zero_);
  }

  // Division by x^k; the low k coefficients must vanish.
  Poly unshifted(int k) const {
    if (static_cast<int>(c_.size()) <= k) return Poly(zero_);
    return Poly(std::vector<R>(c_.begin() + k, c_.end()), zero_);
  }

  // p(x + a)
  Poly taylor_shift(const R& a) const {
    Poly acc(zero_);
    Poly lin(std::vector<R>{a, one_like(zero_)}, zero_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * lin + Poly::constant(c_[i]);
    return acc;
  }

  Poly operator-() const {
    std::vector<R> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(-x);
    return Poly(std::move(v), zero_);
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    const Poly& big = a.c_.size() >= b.c_.size() ? a : b;
    const Poly& small = a.c_.size() >= b.c_.size() ? b : a;
    std::vector<R> v = big.c_;
    for (std::size_t i = 0; i < small.c_.size(); ++i) v[i] = v[i] + small.c_[i];
    return Poly(std::move(v), a.zero_);
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.c_.empty() || b.c_.empty()) return Poly(a.zero_);
    std::vector<R> v(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (berk_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v), a.zero_);
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

private:
  static bool berk_is_zero(const R& r) { return detail::coeff_is_zero(r); }
  void trim() {
    while (!c_.empty() && berk_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<R> c_;
  R zero_{};
};

template <class R>
std::pair<Poly<R>, Poly<R>> divmod(const Poly<R>& a, const Poly<R>& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  std::vector<R> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly<R>(a.zero()), a};
  std::vector<R> quo(static_cast<std::size_t>(a.degree() - db + 1), a.zero());
  R inv = one_like(a.zero()) / b.lead();
  for (int i = a.degree(); i >= db; --i) {
    const R& top = rem[static_cast<std::size_t>(i)];
    if (is_zero(top)) continue;
    R q = top * inv;
    quo[static_cast<std::size_t>(i - db)] = q;
    for (int j = 0; j <= db; ++j) {
      auto k = static_cast<std::size_t>(i - db + j);
      rem[k] = rem[k] - q * b[j];
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly<R>(std::move(quo), a.zero()), Poly<R>(std::move(rem), a.zero())};
}

template <class R>
Poly<R> operator%(const Poly<R>& a, const Poly<R>& b) {
  return divmod(a, b).second;
}

template <class R>
Poly<R> operator/(const Poly<R>& a, const Poly<R>& b) {
  return divmod(a, b).first;
}

// Exact division; throws when b does not divide a.
template <class R>
Poly<R> exact_div(const Poly<R>& a, const Poly<R>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error("inexact polynomial division");
  return q;
}

// Monic gcd; gcd(0, 0) = 0.
template <class R>
Poly<R> gcd(Poly<R> a, Poly<R> b) {
  while (!b.is_zero()) {
    Poly<R> r = (a % b).monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Returns (g, s, t) with s*a + t*b = g monic.
template <class R>
std::tuple<Poly<R>, Poly<R>, Poly<R>> ext_gcd(const Poly<R>& a, const Poly<R>& b) {
  const R z = a.zero();
  Poly<R> r0 = a, r1 = b;
  Poly<R> s0 = Poly<R>::constant(one_like(z)), s1(z);
  Poly<R> t0(z), t1 = Poly<R>::constant(one_like(z));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<R> s2 = s0 - q * s1;
    Poly<R> t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  R inv = one_like(z) / r0.lead();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

template <class R>
Poly<R> pow(const Poly<R>& a, unsigned k) {
  Poly<R> result = Poly<R>::constant(one_like(a.zero()));
  Poly<R> base = a;
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return result;
}

// Squarefree decomposition in characteristic zero (Yun). Returns monic
// squarefree, pairwise coprime factors with their multiplicities.
template <class R>
std::vector<std::pair<Poly<R>, int>> squarefree_char0(const Poly<R>& f) {
  std::vector<std::pair<Poly<R>, int>> out;
  if (f.degree() <= 0) return out;
  Poly<R> a = f.monic();
  Poly<R> d = a.derivative();
  Poly<R> g = gcd(a, d);
  Poly<R> b = exact_div(a, g);
  Poly<R> c = exact_div(d, g) - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Poly<R> h = gcd(b, c);
    if (h.degree() > 0) out.emplace_back(h, i);
    b = exact_div(b, h);
    c = exact_div(c, h) - b.derivative();
    ++i;
  }
  return out;
}

template <class R, class CoeffFmt>
std::string poly_to_string(const Poly<R>& p, const std::string& var, CoeffFmt fmt) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    if (is_zero(p[i])) continue;
    std::string c = fmt(p[i]);
    bool one = (c == "1");
    bool minus_one = (c == "-1");
    if (!out.empty()) {
      if (!c.empty() && c[0] == '-') {
        out += " - ";
        c.erase(0, 1);
        one = (c == "1");
        minus_one = false;
      } else {
        out += " + ";
      }
    }
    if (i == 0) {
      out += c;
      continue;
    }
    if (minus_one)
      out += "-";
    else if (!one)
      out += c + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace berk
