#pragma once

#include <string>
#include <utility>

#include "berkred/poly.hpp"

namespace berk {

// Element of the rational function field R(x): a reduced fraction of
// polynomials with a monic denominator. Zero is 0/1.
template <class R>
class RatFunc {
public:
  RatFunc() = default;
  explicit RatFunc(const R& zero)
      : num_(zero), den_(Poly<R>::constant(one_like(zero))) {}
  explicit RatFunc(Poly<R> num)
      : num_(std::move(num)), den_(Poly<R>::constant(one_like(num_.zero()))) {}
  RatFunc(Poly<R> num, Poly<R> den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("rational function with zero denominator");
    normalize();
  }

  static RatFunc constant(const R& c) { return RatFunc(Poly<R>::constant(c)); }
  static RatFunc variable(const R& like) { return RatFunc(Poly<R>::variable(like)); }

  const Poly<R>& num() const { return num_; }
  const Poly<R>& den() const { return den_; }
  const R& base_zero() const { return num_.zero(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  // Order of vanishing at x = 0 (negative for a pole); the argument must be nonzero.
  int ord0() const { return num_.low_degree() - den_.low_degree(); }

  // Value at x = 0 of a function without pole there.
  R value_at_zero() const {
    if (den_.low_degree() > 0) throw Error("rational function has a pole at 0");
    return num_[0] / den_[0];
  }

  // Multiplication by x^k for any integer k.
  RatFunc times_x_pow(int k) const {
    if (is_zero() || k == 0) return *this;
    RatFunc r = *this;
    if (k > 0) {
      int cancel = std::min(k, r.den_.low_degree());
      r.den_ = r.den_.unshifted(cancel);
      r.num_ = r.num_.shifted(k - cancel);
    } else {
      int need = -k;
      int cancel = std::min(need, r.num_.low_degree());
      r.num_ = r.num_.unshifted(cancel);
      r.den_ = r.den_.shifted(need - cancel);
    }
    r.make_den_monic();
    return r;
  }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ + b.num_);
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc(a.base_zero());
    if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_);
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw Error("division by zero in rational function field");
    if (a.is_zero()) return a;
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  friend bool is_zero(const RatFunc& r) { return r.is_zero(); }
  friend RatFunc zero_like(const RatFunc& r) { return RatFunc(r.base_zero()); }
  friend RatFunc one_like(const RatFunc& r) { return RatFunc::constant(one_like(r.base_zero())); }
  friend RatFunc from_int_like(const RatFunc& r, long n) {
    return RatFunc::constant(from_int_like(r.base_zero(), n));
  }

private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Poly<R>::constant(one_like(num_.zero()));
      return;
    }
    if (den_.degree() > 0) {
      Poly<R> g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
      }
    }
    make_den_monic();
  }
  void make_den_monic() {
    if (den_.is_one()) return;
    R inv = one_like(num_.zero()) / den_.lead();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }

  Poly<R> num_;
  Poly<R> den_;
};

// Q(s): the residue field of the equal-characteristic backend.
using Qs = RatFunc<Rational>;

std::string to_string(const Qs& q, const std::string& var = "s");

template <class R, class CoeffFmt>
std::string ratfunc_to_string(const RatFunc<R>& f, const std::string& var, CoeffFmt fmt) {
  std::string n = poly_to_string(f.num(), var, fmt);
  if (f.is_polynomial()) return n;
  std::string d = poly_to_string(f.den(), var, fmt);
  if (n.find(' ') != std::string::npos) n = "(" + n + ")";
  if (d.find_first_of(" */") != std::string::npos) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace berk
