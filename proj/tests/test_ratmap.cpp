#include "doctest.h"
#include "support.hpp"

using namespace testsupport;

namespace {

Form form(const FieldConfig* cfg, std::vector<std::string> c) {
  Form f;
  for (const auto& s : c) f.push_back(S(cfg, s));
  return f;
}

// phi(z) = F(z,1)/G(z,1) at a finite point with G(z,1) != 0.
Scalar value(const HomogeneousPair& m, const Scalar& z) { return eval_affine(m.F, z) / eval_affine(m.G, z); }

}  // namespace

TEST_CASE("parse_map examples") {
  auto c5 = padic_field(5);
  HomogeneousPair z2 = parse_map("z^2", c5);
  CHECK(z2.d == 2);
  CHECK(projectively_equal(z2, HomogeneousPair(form(c5, {"0", "0", "1"}), form(c5, {"1", "0", "0"}))));
  auto c3 = padic_field(3);
  HomogeneousPair lox = parse_map("-z*(z-10)/(z-4)", c3);
  // (-X(X - 10Y), Y(X - 4Y))
  CHECK(projectively_equal(lox, HomogeneousPair(form(c3, {"0", "10", "-1"}), form(c3, {"-4", "1", "0"}))));
  CHECK_THROWS_AS(parse_map("(z-1)/(z-1)", c3), Error);
  CHECK_THROWS_AS(parse_map("7", c3), Error);
  CHECK_THROWS_AS(parse_map("z^2 +", c3), Error);
  CHECK_THROWS_AS(parse_map("z^2 + q", c3), Error);
  // Denominators with constants fold in.
  CHECK(projectively_equal(parse_map("z^2/3", c3), parse_map("z*z/(1+2)", c3)));
}

TEST_CASE("normalize examples") {
  auto c5 = padic_field(5);
  CHECK(projectively_equal(normalize(HomogeneousPair(form(c5, {"0", "0", "5"}), form(c5, {"5", "0", "0"}))),
                           HomogeneousPair(form(c5, {"0", "0", "1"}), form(c5, {"1", "0", "0"}))));
  HomogeneousPair n = normalize(HomogeneousPair(form(c5, {"0", "0", "5"}), form(c5, {"5", "0", "0"})));
  CHECK(min_coeff_valuation(n) == 0);
  HomogeneousPair pz = HomogeneousPair(form(c5, {"0", "0", "5"}), form(c5, {"1", "0", "0"}));
  CHECK(normalize(pz).F == pz.F);
  CHECK(normalize(pz).G == pz.G);
  auto c3 = padic_field(3, 2);
  HomogeneousPair m(form(c3, {"0", "0", "pi"}), form(c3, {"3", "0", "0"}));
  HomogeneousPair expect(form(c3, {"0", "0", "1"}), form(c3, {"pi", "0", "0"}));
  CHECK(normalize(m).F == expect.F);
  CHECK(normalize(m).G == expect.G);
}

TEST_CASE("resultant examples") {
  auto c5 = padic_field(5);
  CHECK(resultant(parse_map("z^2", c5)) == Scalar(c5, 1L));
  CHECK(resultant(parse_map("5*z^2", c5)) == Scalar(c5, 25L));
  CHECK(resultant(HomogeneousPair(form(c5, {"0", "-1", "1"}), form(c5, {"1", "0", "0"}))) == Scalar(c5, 1L));
}

TEST_CASE("resultant matches the quadratic closed formula") {
  std::mt19937 rng(11);
  for (auto cfg : {padic_field(2), padic_field(3, 2), padic_field(5)}) {
    for (int i = 0; i < 40; ++i) {
      HomogeneousPair m = random_quadratic(rng, cfg);
      CHECK(resultant(m) == quadratic_resultant(m.F, m.G));
    }
  }
  HomogeneousPair ac = acyclic_fixture().map();
  CHECK(resultant(ac) == quadratic_resultant(ac.F, ac.G));
}

TEST_CASE("conjugate examples") {
  auto c5 = padic_field(5);
  HomogeneousPair pz2 = parse_map("5*z^2", c5);
  // gamma(w) = w/5
  Mobius g = Mobius::affine(Scalar(c5, Q("1/5")), Scalar(c5, 0L));
  CHECK(projectively_equal(conjugate(pz2, g), parse_map("z^2", c5)));
  CHECK(projectively_equal(conjugate(pz2, Mobius::identity(c5)), pz2));
  CHECK(projectively_equal(conjugate(parse_map("z^2", c5), Mobius::inversion(c5)), parse_map("z^2", c5)));
}

TEST_CASE("conjugation agrees with pointwise composition") {
  std::mt19937 rng(3);
  auto cfg = padic_field(3);
  for (int i = 0; i < 20; ++i) {
    HomogeneousPair m = random_quadratic(rng, cfg);
    Mobius g = random_mobius(rng, cfg);
    HomogeneousPair c = conjugate(m, g);
    Mobius gi = g.inverse();
    for (long z = 2; z < 7; ++z) {
      Scalar w(cfg, z);
      auto apply = [](const Mobius& h, const Scalar& x) { return (h.a * x + h.b) / (h.c * x + h.d); };
      Scalar gw_den = g.c * w + g.d;
      if (gw_den.is_zero()) continue;
      Scalar gw = apply(g, w);
      if (eval_affine(m.G, gw).is_zero()) continue;
      Scalar phi = value(m, gw);
      if ((gi.c * phi + gi.d).is_zero() || eval_affine(c.G, w).is_zero()) continue;
      CHECK(value(c, w) == apply(gi, phi));
    }
  }
}

TEST_CASE("iterate examples") {
  auto c5 = padic_field(5);
  HomogeneousPair z8 = iterate(parse_map("z^2", c5), 3);
  CHECK(z8.d == 8);
  CHECK(projectively_equal(z8, parse_map("z^8", c5)));
  HomogeneousPair lox = loxodromic_fixture().map();
  CHECK(projectively_equal(iterate(lox, 1), lox));
  HomogeneousPair par = parabolic_fixture().map();
  HomogeneousPair par2 = iterate(par, 2);
  CHECK(par2.d == 4);
  CHECK(!resultant(par2).is_zero());
  // Both sides at 5 rational points.
  const FieldConfig* cfg = par.cfg;
  for (const char* z : {"3", "5", "1/3", "-7", "11/2"}) {
    Scalar w = S(cfg, z);
    CHECK(value(par2, w) == value(par, value(par, w)));
  }
  CHECK_THROWS_AS(iterate(par, 7), CapExceededError);
}

TEST_CASE("iterate splits into stages") {
  for (const auto& f : {loxodromic_fixture(), parabolic_fixture(), acyclic_fixture()}) {
    HomogeneousPair m = f.map();
    CHECK(projectively_equal(iterate(m, 3), compose(iterate(m, 1), iterate(m, 2))));
    CHECK(projectively_equal(iterate(m, 3), compose(iterate(m, 2), m)));
  }
}

TEST_CASE("reduce_map examples") {
  auto c5 = padic_field(5);
  ReducedMap z2 = reduce_map(parse_map("z^2", c5));
  CHECK(z2.H.f.degree() == 0);
  CHECK(residue_factor(z2.H.f, z2.H.d).empty());
  CHECK(!z2.constant);
  CHECK(z2.divided_degree == 2);
  CHECK(z2.divided_str() == "z^2");

  ReducedMap pz2 = reduce_map(normalize(parse_map("5*z^2", c5)));
  CHECK(pz2.F.is_zero());
  // H = Y^2: constant affine part, double point at infinity.
  CHECK(pz2.H.f.degree() == 0);
  CHECK(residue_factor(pz2.H.f, pz2.H.d) == std::vector<std::pair<ClosedPoint, int>>{{ClosedPoint::infinity(), 2}});
  CHECK(pz2.constant);
  CHECK(pz2.constant_value == ResPoint::finite(residue_from_int(c5, 0)));

  ReducedMap lox = reduce_map(normalize(loxodromic_fixture(1).map()));
  auto c3 = padic_field(3);
  CHECK(residue_factor(lox.H.f, lox.H.d) == std::vector<std::pair<ClosedPoint, int>>{{rat(c3, 1), 1}});
  CHECK(!lox.constant);
  CHECK(lox.divided_degree == 1);
  CHECK(lox.eval(ResPoint::finite(residue_from_int(c3, 1))) == ResPoint::finite(residue_from_int(c3, 2)));
}

TEST_CASE("reduction invariants on random maps") {
  std::mt19937 rng(17);
  for (auto cfg : {padic_field(2), padic_field(3, 2), padic_field(5)}) {
    for (int i = 0; i < 30; ++i) {
      HomogeneousPair m = random_quadratic(rng, cfg);
      ReducedMap r = reduce_map(normalize(m));
      int hole = 0;
      for (const auto& [u, k] : residue_factor(r.H.f, r.H.d)) hole += u.degree() * k;
      CHECK(hole + r.divided_degree == m.d);
      // NonConstant iff the Gauss point is fixed.
      CHECK(!r.constant == (image_point(m, TypeIIPoint::gauss(cfg)) == TypeIIPoint::gauss(cfg)));
      // ordRes after conjugation does not depend on the scaling of gamma.
      Mobius g = random_mobius(rng, cfg);
      Scalar lam = random_scalar(rng, cfg, -2, 2);
      Mobius g2{g.a * lam, g.b * lam, g.c * lam, g.d * lam};
      CHECK(resultant(normalize(conjugate(m, g))).valuation() == resultant(normalize(conjugate(m, g2))).valuation());
    }
  }
}
