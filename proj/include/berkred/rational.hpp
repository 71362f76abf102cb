#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace berk {

using Integer = mpz_class;
using Rational = mpq_class;

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A radius exponent or valuation needs a denominator not dividing e.
class RamificationError : public Error {
public:
  using Error::Error;
};

// A residue direction is not rational over the base residue field.
class IrrationalDirectionError : public Error {
public:
  using Error::Error;
};

// An iterative procedure hit its configured cap.
class CapExceededError : public Error {
public:
  using Error::Error;
};

// a/b in canonical form.
inline Rational frac(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline Rational one_like(const Rational&) { return Rational(1); }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational from_int_like(const Rational&, long n) { return Rational(n); }

// p-adic order of a nonzero integer.
int ord_p(const Integer& n, unsigned long p);
// p-adic order of a nonzero rational.
int ord_p(const Rational& q, unsigned long p);

// Serialized as "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
Rational abs(const Rational& q);

// Reduction of a p-integral rational modulo p, in [0, p).
unsigned long mod_p(const Rational& q, unsigned long p);

}  // namespace berk
