#include "doctest.h"
#include "support.hpp"

using namespace testsupport;

namespace {

ResPoly rpoly(const FieldConfig* cfg, std::vector<long> c) {
  std::vector<Residue> r;
  for (long v : c) r.push_back(residue_from_int(cfg, v));
  return ResPoly(r, residue_zero(cfg));
}

// Product of the factors (finite part) times the leading coefficient.
ResPoly remultiply(const std::vector<std::pair<ClosedPoint, int>>& fac, const Residue& lead) {
  ResPoly out = ResPoly::constant(lead);
  for (const auto& [u, k] : fac) {
    if (u.is_infinity()) continue;
    for (int i = 0; i < k; ++i) out *= u.minpoly();
  }
  return out;
}

}  // namespace

TEST_CASE("scalar arithmetic examples") {
  auto cfg = padic_field(3, 2);
  CHECK((Scalar(cfg, 1L) + Scalar(cfg, -1L)).is_zero());
  Scalar pi = Scalar::pi(cfg);
  CHECK(pi * pi == Scalar(cfg, 3L));
  CHECK(Scalar(cfg, 3L) / pi == pi);
  // (1 + pi)(pi - 1)/2 = (pi^2 - 1)/2 = 1
  CHECK((Scalar(cfg, 1L) + pi).inverse() == (pi - Scalar(cfg, 1L)) / Scalar(cfg, 2L));
  CHECK(S(cfg, "4 + 3*pi") == Scalar(cfg, 4L) + Scalar(cfg, 3L) * pi);
  CHECK_THROWS_AS(Scalar(cfg, 1L) / Scalar(cfg, 0L), Error);
  CHECK_THROWS_AS(Scalar(cfg, 1L) + Scalar(padic_field(3, 1), 1L), Error);
}

TEST_CASE("valuation examples") {
  CHECK(Scalar(padic_field(5), 5L).valuation() == ValExp(Rational(1)));
  CHECK(Scalar::pi(padic_field(3, 2)).valuation() == ValExp(Q("1/2")));
  CHECK(Scalar(padic_field(3), 6L).valuation() == ValExp(Rational(1)));
  CHECK(Scalar(padic_field(3), 0L).valuation().is_infinite());
  CHECK(Scalar(padic_field(2, 3), Q("3/8")).valuation() == ValExp(Rational(-3)));
  auto l = laurent_field(1);
  CHECK(Scalar::param_t(l).valuation() == ValExp(Rational(1)));
  CHECK(Scalar::param_s(l).valuation() == ValExp(Rational(0)));
  CHECK(S(l, "s*t^-2 + t").valuation() == ValExp(Rational(-2)));
  CHECK(Scalar::pi(laurent_field(2)).valuation() == ValExp(Q("1/2")));
}

TEST_CASE("reduce_unit examples") {
  auto c3 = padic_field(3);
  CHECK(reduce_unit(Scalar(c3, 4L)) == residue_from_int(c3, 1));
  auto c32 = padic_field(3, 2);
  CHECK(reduce_unit(Scalar(c32, 1L) + Scalar::pi(c32)) == residue_from_int(c32, 1));
  CHECK_THROWS_AS(reduce_unit(Scalar(c3, 3L)), Error);
  auto l = laurent_field(1);
  Residue r = reduce_unit(S(l, "(s + t)/(1 - s*t)"));
  CHECK(r == reduce_unit(Scalar::param_s(l)));
  CHECK(r.str() == "s");
}

TEST_CASE("residue_factor examples") {
  auto c3 = padic_field(3);
  // X^2 - XY
  auto f1 = residue_factor(rpoly(c3, {0, -1, 1}), 2);
  REQUIRE(f1.size() == 2);
  CHECK(f1[0] == std::make_pair(rat(c3, 0), 1));
  CHECK(f1[1] == std::make_pair(rat(c3, 1), 1));
  auto f2 = residue_factor(rpoly(c3, {-1, 1}), 1);
  REQUIRE(f2.size() == 1);
  CHECK(f2[0] == std::make_pair(rat(c3, 1), 1));
  // X^2 + 1: irreducible over F_3, roots in F_9 square to -1.
  auto f3 = residue_factor(rpoly(c3, {1, 0, 1}), 2);
  REQUIRE(f3.size() == 1);
  CHECK(f3[0].first.degree() == 2);
  CHECK(f3[0].second == 1);
  auto roots = closed_point_roots(f3[0].first);
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) {
    CHECK(r * r + one_like(r) == zero_like(r));
    CHECK(!r.is_base());
  }
  CHECK(roots[0] != roots[1]);
  // Y^2 in degree 2: a double point at infinity.
  auto f4 = residue_factor(rpoly(c3, {1}), 2);
  REQUIRE(f4.size() == 1);
  CHECK(f4[0] == std::make_pair(ClosedPoint::infinity(), 2));
}

TEST_CASE("residue_factor over Q(s)") {
  auto l = laurent_field(1);
  Residue s = reduce_unit(Scalar::param_s(l));
  Residue one = residue_from_int(l, 1);
  // (x - s)^2 (x - 1)
  ResPoly lin1(std::vector<Residue>{-s, one}, residue_zero(l));
  ResPoly lin2(std::vector<Residue>{-one, one}, residue_zero(l));
  auto fac = residue_factor(lin1 * lin1 * lin2, 4);
  REQUIRE(fac.size() == 3);
  int total = 0;
  for (const auto& [u, k] : fac) total += k;
  CHECK(total == 4);
  CHECK(closed_point_multiplicity(lin1 * lin1 * lin2, 4, ClosedPoint::rational(s)) == 2);
  CHECK(closed_point_multiplicity(lin1 * lin1 * lin2, 4, ClosedPoint::infinity()) == 1);
  // x^2 - (s^2 + 2s + 1) splits, x^2 - s does not.
  ResPoly sq(std::vector<Residue>{-(s + one) * (s + one), residue_zero(l), one}, residue_zero(l));
  CHECK(residue_factor(sq, 2).size() == 2);
  ResPoly irr(std::vector<Residue>{-s, residue_zero(l), one}, residue_zero(l));
  CHECK_THROWS_AS(residue_factor(irr, 2), IrrationalDirectionError);
  auto root = qs_sqrt((s * s + s * from_int_like(s, 4) + from_int_like(s, 4)).qs());
  REQUIRE(root);
  CHECK(Residue(*root) * Residue(*root) == (s + from_int_like(s, 2)) * (s + from_int_like(s, 2)));
  CHECK(!qs_sqrt(s.qs()));
}

TEST_CASE("valuation is multiplicative and ultrametric") {
  std::mt19937 rng(20261019);
  std::vector<const FieldConfig*> cfgs{padic_field(2, 1), padic_field(3, 2), padic_field(5, 3), padic_field(7, 1)};
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const FieldConfig* cfg = cfgs[static_cast<std::size_t>(i) % cfgs.size()];
    Scalar x = random_padic(rng, cfg), y = random_padic(rng, cfg);
    if (x.is_zero() || y.is_zero()) continue;
    ValExp vx = x.valuation(), vy = y.valuation();
    CHECK((x * y).valuation() == ValExp(vx.value() + vy.value()));
    ValExp vs = (x + y).valuation();
    CHECK(vs >= std::min(vx, vy));
    if (vx != vy) CHECK(vs == std::min(vx, vy));
    // Denominator divides e.
    CHECK(Integer(cfg->e) % vx.value().get_den() == 0);
    ++checked;
  }
  CHECK(checked > 900);
}

TEST_CASE("laurent valuation properties") {
  std::mt19937 rng(7);
  for (int e : {1, 2}) {
    auto cfg = laurent_field(e);
    for (int i = 0; i < 60; ++i) {
      Scalar x = random_laurent(rng, cfg), y = random_laurent(rng, cfg);
      if (x.is_zero() || y.is_zero()) continue;
      ValExp vx = x.valuation(), vy = y.valuation();
      CHECK((x * y).valuation() == ValExp(vx.value() + vy.value()));
      CHECK((x + y).valuation() >= std::min(vx, vy));
      if (vx != vy) CHECK((x + y).valuation() == std::min(vx, vy));
      CHECK(x * x.inverse() == Scalar(cfg, 1L));
    }
  }
}

TEST_CASE("reduce_unit is a ring homomorphism on units") {
  std::mt19937 rng(99);
  for (auto cfg : {padic_field(3, 2), padic_field(5, 1), laurent_field(1)}) {
    int n = 0;
    const int want = cfg->mixed() ? 100 : 40;
    for (int i = 0; i < 4000 && n < want; ++i) {
      Scalar x = cfg->mixed() ? random_padic(rng, cfg) : random_laurent(rng, cfg);
      Scalar y = cfg->mixed() ? random_padic(rng, cfg) : random_laurent(rng, cfg);
      if (x.valuation() != ValExp(Rational(0)) || y.valuation() != ValExp(Rational(0))) continue;
      CHECK(reduce_unit(x * y) == reduce_unit(x) * reduce_unit(y));
      if ((x + y).valuation() == ValExp(Rational(0))) CHECK(reduce_unit(x + y) == reduce_unit(x) + reduce_unit(y));
      CHECK(reduce_unit(lift(cfg, reduce_unit(x))) == reduce_unit(x));
      ++n;
    }
    CHECK(n >= 20);
  }
}

TEST_CASE("residue_factor re-multiplies to its input") {
  std::mt19937 rng(5);
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    auto cfg = padic_field(p);
    std::uniform_int_distribution<long> c(0, static_cast<long>(p) - 1);
    std::uniform_int_distribution<int> deg(1, 5);
    for (int i = 0; i < 60; ++i) {
      std::vector<long> co;
      int d = deg(rng);
      for (int k = 0; k <= d; ++k) co.push_back(c(rng));
      ResPoly f = rpoly(cfg, co);
      if (f.is_zero()) continue;
      auto fac = residue_factor(f, d);
      ResPoly back = remultiply(fac, f[f.degree()]);
      CHECK(back == f);
      int mass = 0;
      for (const auto& [u, k] : fac) mass += u.degree() * k;
      CHECK(mass == d);
      // Brute-force oracle for the rational roots.
      for (long a = 0; a < static_cast<long>(p); ++a) {
        Residue r = residue_from_int(cfg, a);
        Residue val = residue_zero(cfg);
        for (int k = f.degree(); k >= 0; --k) val = val * r + f[k];
        CHECK((closed_point_multiplicity(f, d, ClosedPoint::rational(r)) > 0) == val.is_zero());
      }
    }
  }
}
