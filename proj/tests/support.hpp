#pragma once

#include <random>
#include <string>
#include <vector>

#include "berkred/expr.hpp"
#include "berkred/harness.hpp"

namespace testsupport {

using namespace berk;

inline Rational Q(const std::string& s) { return parse_rational(s); }

inline Scalar S(const FieldConfig* cfg, const std::string& text) { return parse_scalar(text, cfg); }

inline TypeIIPoint P(const FieldConfig* cfg, const std::string& text) { return parse_point(text, cfg); }

inline ClosedPoint rat(const FieldConfig* cfg, long a) { return ClosedPoint::rational(residue_from_int(cfg, a)); }

// c * pi^k with c a small nonzero integer.
inline Scalar random_scalar(std::mt19937& rng, const FieldConfig* cfg, int kmin = 0, int kmax = 2) {
  std::uniform_int_distribution<long> c(-9, 9);
  std::uniform_int_distribution<int> k(kmin, kmax);
  long v = 0;
  while (v == 0) v = c(rng);
  Scalar out(cfg, v);
  return out.times_uniformizer_pow(k(rng));
}

// Random Sum c_i pi^i with rational c_i.
inline Scalar random_padic(std::mt19937& rng, const FieldConfig* cfg) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
  std::vector<Rational> c;
  for (int i = 0; i < cfg->e; ++i) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    c.push_back(q);
  }
  return Scalar::from_padic_coeffs(cfg, c);
}

// Random element of Q(s)(t) built from a short expression.
inline Scalar random_laurent(std::mt19937& rng, const FieldConfig* cfg) {
  std::uniform_int_distribution<int> c(-5, 5), k(-2, 3), pick(0, 2);
  auto mono = [&]() {
    std::string base[] = {"1", "s", "(s+1)"};
    return "(" + std::to_string(c(rng)) + ")*" + base[pick(rng)] + "*t^" + std::to_string(k(rng));
  };
  std::string num = mono() + "+" + mono();
  std::string den = "(" + std::to_string(c(rng) == 0 ? 1 : 2) + "+" + mono() + "*t)";
  Scalar n = parse_scalar(num, cfg);
  Scalar d = parse_scalar(den, cfg);
  if (d.is_zero()) return n;
  return n / d;
}

// Quadratic map with random coefficients and nonzero resultant.
inline HomogeneousPair random_quadratic(std::mt19937& rng, const FieldConfig* cfg) {
  std::uniform_int_distribution<int> zero(0, 3);
  for (;;) {
    Form F, G;
    for (int i = 0; i < 3; ++i) {
      F.push_back(zero(rng) == 0 ? Scalar(cfg, 0L) : random_scalar(rng, cfg, -1, 2));
      G.push_back(zero(rng) == 0 ? Scalar(cfg, 0L) : random_scalar(rng, cfg, -1, 2));
    }
    HomogeneousPair m(F, G);
    if (!resultant(m).is_zero()) return m;
  }
}

// Type II point with an integer center and radius exponent in [-2, 2] (steps 1/e).
inline TypeIIPoint random_point(std::mt19937& rng, const FieldConfig* cfg, int span = 2) {
  std::uniform_int_distribution<long> c(-20, 20);
  std::uniform_int_distribution<int> t(-span * cfg->e, span * cfg->e);
  return TypeIIPoint(Scalar(cfg, c(rng)), frac(t(rng), cfg->e));
}

inline Mobius random_mobius(std::mt19937& rng, const FieldConfig* cfg) {
  std::uniform_int_distribution<long> c(-6, 6);
  for (;;) {
    Mobius g{Scalar(cfg, c(rng)), Scalar(cfg, c(rng)), Scalar(cfg, c(rng)), Scalar(cfg, c(rng))};
    if (!g.det().is_zero()) return g;
  }
}

// Res(F, G) for quadratic forms by the classical closed formula
// (a2 b0 - a0 b2)^2 - (a2 b1 - a1 b2)(a1 b0 - a0 b1).
inline Scalar quadratic_resultant(const Form& F, const Form& G) {
  const Scalar &a0 = F[0], &a1 = F[1], &a2 = F[2], &b0 = G[0], &b1 = G[1], &b2 = G[2];
  Scalar u = a2 * b0 - a0 * b2;
  return u * u - (a2 * b1 - a1 * b2) * (a1 * b0 - a0 * b1);
}

// Image of the disk (c, t) under the polynomial with affine coefficients f:
// the disk about f(c) whose log-radius is max_k (k t - v(a_k)), a_k the
// Taylor coefficients at c, computed by binomial expansion.
inline TypeIIPoint polynomial_disk_image(const std::vector<Scalar>& f, const TypeIIPoint& x) {
  const FieldConfig* cfg = x.config();
  const Scalar& c = x.center();
  const int n = static_cast<int>(f.size()) - 1;
  std::vector<Scalar> a(f.size(), Scalar(cfg, 0L));
  for (int i = 0; i <= n; ++i) {
    // Contribution of f_i z^i = f_i (c + u)^i to u^k is f_i C(i,k) c^(i-k).
    std::vector<Scalar> powers(static_cast<std::size_t>(i + 1), Scalar(cfg, 1L));
    for (int k = 1; k <= i; ++k) powers[static_cast<std::size_t>(k)] = powers[static_cast<std::size_t>(k - 1)] * c;
    for (int k = 0; k <= i; ++k) {
      Integer b;
      mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(i), static_cast<unsigned long>(k));
      a[static_cast<std::size_t>(k)] += f[static_cast<std::size_t>(i)] * Scalar(cfg, Rational(b)) * powers[static_cast<std::size_t>(i - k)];
    }
  }
  std::optional<Rational> best;
  for (int k = 1; k <= n; ++k) {
    ValExp v = a[static_cast<std::size_t>(k)].valuation();
    if (v.is_infinite()) continue;
    Rational r = Rational(k) * x.t() - v.value();
    if (!best || r > *best) best = r;
  }
  return TypeIIPoint(a[0], *best);
}

}  // namespace testsupport
