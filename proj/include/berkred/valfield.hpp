#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "berkred/finite_field.hpp"
#include "berkred/poly.hpp"
#include "berkred/ratfunc.hpp"
#include "berkred/rational.hpp"

namespace berk {

enum class Backend { MixedChar, EqualCharZero };

// Valued field backend. MixedChar is Q(pi) with pi^e = p; EqualCharZero is
// Q(s)(tau) with tau^e = t and the tau-adic valuation normalized so that
// v(t) = 1. Configs are interned: compare them by address.
struct FieldConfig {
  Backend backend = Backend::MixedChar;
  unsigned long p = 0;  // unused (0) for EqualCharZero
  int e = 1;

  bool mixed() const { return backend == Backend::MixedChar; }
  std::string backend_name() const { return mixed() ? "padic" : "laurent"; }
};

const FieldConfig* field_config(Backend backend, unsigned long p, int e);
inline const FieldConfig* padic_field(unsigned long p, int e = 1) {
  return field_config(Backend::MixedChar, p, e);
}
inline const FieldConfig* laurent_field(int e = 1) { return field_config(Backend::EqualCharZero, 0, e); }

// Valuation: a rational with denominator dividing e, or +infinity.
class ValExp {
public:
  ValExp() = default;  // +infinity
  explicit ValExp(Rational q) : q_(std::move(q)) {}
  static ValExp infinity() { return ValExp(); }

  bool is_infinite() const { return !q_; }
  const Rational& value() const;
  std::string str() const { return q_ ? to_string(*q_) : "inf"; }

  friend bool operator==(const ValExp& a, const ValExp& b) { return a.q_ == b.q_; }
  friend bool operator<(const ValExp& a, const ValExp& b) {
    if (!a.q_) return false;
    if (!b.q_) return true;
    return *a.q_ < *b.q_;
  }
  friend bool operator<=(const ValExp& a, const ValExp& b) { return !(b < a); }
  friend bool operator>(const ValExp& a, const ValExp& b) { return b < a; }
  friend bool operator>=(const ValExp& a, const ValExp& b) { return !(a < b); }

private:
  std::optional<Rational> q_;
};

// Element of the residue field: F_{p^m} for MixedChar, Q(s) otherwise.
class Residue {
public:
  Residue() = default;
  Residue(GF g) : v_(std::move(g)) {}
  Residue(Qs q) : v_(std::move(q)) {}

  bool is_gf() const { return std::holds_alternative<GF>(v_); }
  const GF& gf() const { return std::get<GF>(v_); }
  const Qs& qs() const { return std::get<Qs>(v_); }
  bool is_zero() const;
  // Lies in F_p (resp. Q(s)).
  bool is_base() const { return !is_gf() || gf().in_prime_field(); }
  std::string str() const;

  Residue operator-() const;
  friend Residue operator+(const Residue& a, const Residue& b);
  friend Residue operator-(const Residue& a, const Residue& b);
  friend Residue operator*(const Residue& a, const Residue& b);
  friend Residue operator/(const Residue& a, const Residue& b);
  friend bool operator==(const Residue& a, const Residue& b);
  friend bool operator!=(const Residue& a, const Residue& b) { return !(a == b); }
  // Arbitrary but deterministic total order.
  friend bool operator<(const Residue& a, const Residue& b);

  friend bool is_zero(const Residue& a) { return a.is_zero(); }
  friend Residue zero_like(const Residue& a);
  friend Residue one_like(const Residue& a);
  friend Residue from_int_like(const Residue& a, long n);

private:
  std::variant<GF, Qs> v_;
};

using ResPoly = Poly<Residue>;

Residue residue_zero(const FieldConfig* cfg);
Residue residue_from_int(const FieldConfig* cfg, long n);

class Scalar {
public:
  Scalar() = default;
  Scalar(const FieldConfig* cfg, long n);
  Scalar(const FieldConfig* cfg, const Rational& q);

  // pi^k (MixedChar) or tau^k (EqualCharZero).
  static Scalar uniformizer_pow(const FieldConfig* cfg, int k);
  static Scalar pi(const FieldConfig* cfg) { return uniformizer_pow(cfg, 1); }
  // t = tau^e; EqualCharZero only.
  static Scalar param_t(const FieldConfig* cfg);
  // Residue parameter s; EqualCharZero only.
  static Scalar param_s(const FieldConfig* cfg);
  static Scalar from_padic_coeffs(const FieldConfig* cfg, std::vector<Rational> c);
  static Scalar from_laurent(const FieldConfig* cfg, RatFunc<Qs> f);

  const FieldConfig* config() const { return cfg_; }
  bool is_zero() const;
  ValExp valuation() const;
  // Reduction of an element with valuation >= 0.
  Residue residue() const;
  Scalar times_uniformizer_pow(int k) const;
  Scalar inverse() const;
  std::string str() const;

  const std::vector<Rational>& padic_coeffs() const { return std::get<std::vector<Rational>>(v_); }
  const RatFunc<Qs>& laurent() const { return std::get<RatFunc<Qs>>(v_); }

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool is_zero(const Scalar& a) { return a.is_zero(); }
  friend Scalar zero_like(const Scalar& a) { return Scalar(a.cfg_, 0L); }
  friend Scalar one_like(const Scalar& a) { return Scalar(a.cfg_, 1L); }
  friend Scalar from_int_like(const Scalar& a, long n) { return Scalar(a.cfg_, n); }

private:
  static const FieldConfig* common(const Scalar& a, const Scalar& b);

  const FieldConfig* cfg_ = nullptr;
  std::variant<std::vector<Rational>, RatFunc<Qs>> v_;
};

// Image of a unit in the residue field; throws unless v(x) = 0.
Residue reduce_unit(const Scalar& x);
// Canonical lift of a residue in the base residue field (F_p or Q(s)).
Scalar lift(const FieldConfig* cfg, const Residue& r);

// A closed point of P^1 over the base residue field: infinity or a monic
// irreducible polynomial. Over Q(s) only rational points occur.
class ClosedPoint {
public:
  ClosedPoint() = default;
  static ClosedPoint infinity();
  static ClosedPoint rational(const Residue& a);
  static ClosedPoint from_irreducible(ResPoly monic_irreducible);

  bool is_infinity() const { return inf_; }
  int degree() const { return inf_ ? 1 : f_.degree(); }
  bool is_rational() const { return degree() == 1; }
  // Value of a finite rational point.
  Residue value() const;
  const ResPoly& minpoly() const { return f_; }
  std::string str() const;

  friend bool operator==(const ClosedPoint& a, const ClosedPoint& b);
  friend bool operator!=(const ClosedPoint& a, const ClosedPoint& b) { return !(a == b); }
  friend bool operator<(const ClosedPoint& a, const ClosedPoint& b);

private:
  bool inf_ = false;
  ResPoly f_;
};

// Factorization of the residue binary form with affine part f (coefficient i
// at X^i Y^(d-i)) into closed points with multiplicities. Infinity carries
// multiplicity d - deg f. Sorted by ClosedPoint order.
std::vector<std::pair<ClosedPoint, int>> residue_factor(const ResPoly& f, int d);

// Multiplicity of the closed point u as a zero of the binary form (f, d).
int closed_point_multiplicity(const ResPoly& f, int d, const ClosedPoint& u);

// Roots of an irreducible factor in a splitting extension (MixedChar), or the
// single rational root.
std::vector<Residue> closed_point_roots(const ClosedPoint& u);

// Square root in Q(s) when it exists.
std::optional<Qs> qs_sqrt(const Qs& q);

std::string to_string(const Scalar& x);

}  // namespace berk
