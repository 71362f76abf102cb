#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "berkred/poly.hpp"

namespace berk {

// F_{p^m} presented as F_p[x]/(modulus). Contexts are interned and live for
// the whole program, so elements compare contexts by address.
struct GFContext {
  std::uint64_t p = 0;
  int degree = 1;
  std::vector<std::uint64_t> modulus;  // monic, low to high, size degree + 1

  std::uint64_t cardinality() const;
};

// Prime field F_p.
const GFContext* gf_prime(std::uint64_t p);
// Extension F_{p^m}; the modulus is the lexicographically first monic
// irreducible polynomial of degree m.
const GFContext* gf_extension(std::uint64_t p, int m);

class GF {
public:
  GF() = default;
  GF(const GFContext* ctx, std::int64_t value);
  GF(const GFContext* ctx, std::vector<std::uint64_t> coords);

  const GFContext* context() const { return ctx_; }
  const std::vector<std::uint64_t>& coords() const { return v_; }
  bool is_zero() const;
  // True when the element lies in the prime field.
  bool in_prime_field() const;
  // Value of a prime-field element in [0, p).
  std::uint64_t prime_value() const;
  GF embed(const GFContext* ext) const;
  // Image in the prime-field context; requires in_prime_field().
  GF to_prime() const;
  GF inverse() const;
  GF pow(std::uint64_t k) const;
  std::string str() const;

  friend GF operator+(const GF& a, const GF& b);
  friend GF operator-(const GF& a, const GF& b);
  friend GF operator*(const GF& a, const GF& b);
  friend GF operator/(const GF& a, const GF& b);
  GF operator-() const;
  friend bool operator==(const GF& a, const GF& b);
  friend bool operator!=(const GF& a, const GF& b) { return !(a == b); }
  friend bool operator<(const GF& a, const GF& b);

  friend bool is_zero(const GF& a) { return a.is_zero(); }
  friend GF zero_like(const GF& a) { return GF(a.ctx_, 0); }
  friend GF one_like(const GF& a) { return GF(a.ctx_, 1); }
  friend GF from_int_like(const GF& a, long n) { return GF(a.ctx_, n); }

private:
  static std::pair<GF, GF> promote(const GF& a, const GF& b);

  const GFContext* ctx_ = nullptr;
  std::vector<std::uint64_t> v_;
};

using GFPoly = Poly<GF>;

// Complete factorization over F_p into monic irreducibles with
// multiplicities, sorted by (degree, coefficients). Input must be nonzero
// with coefficients in the prime field.
std::vector<std::pair<GFPoly, int>> factor_fp(const GFPoly& f);

bool is_irreducible_fp(const GFPoly& f);

// All roots of f (coefficients in the prime field) inside F_{p^m}, by
// exhaustive search; fails if p^m is too large to enumerate.
std::vector<GF> roots_in_extension(const GFPoly& f, int m);

// Minimal polynomial over F_p of an element of some F_{p^m}.
GFPoly minimal_polynomial(const GF& a);

bool lex_less(const GFPoly& a, const GFPoly& b);

}  // namespace berk
