#include "doctest.h"
#include "support.hpp"

using namespace testsupport;

namespace {

// Affine coefficients of f(a + u) by binomial expansion.
std::vector<Scalar> taylor_shift(const std::vector<Scalar>& f, const Scalar& a) {
  const FieldConfig* cfg = a.config();
  std::vector<Scalar> out(f.size(), Scalar(cfg, 0L));
  for (std::size_t i = 0; i < f.size(); ++i) {
    Scalar apow(cfg, 1L);
    std::vector<Scalar> powers{apow};
    for (std::size_t k = 1; k <= i; ++k) powers.push_back(powers.back() * a);
    for (std::size_t k = 0; k <= i; ++k) {
      Integer b;
      mpz_bin_uiui(b.get_mpz_t(), i, k);
      out[k] += f[i] * Scalar(cfg, Rational(b)) * powers[i - k];
    }
  }
  return out;
}

// Lowest and highest indices attaining the minimal coefficient valuation.
std::pair<int, int> min_indices(const std::vector<Scalar>& c) {
  std::optional<Rational> best;
  int lo = -1, hi = -1;
  for (int i = 0; i < static_cast<int>(c.size()); ++i) {
    ValExp v = c[static_cast<std::size_t>(i)].valuation();
    if (v.is_infinite()) continue;
    if (!best || v.value() < *best) {
      best = v.value();
      lo = hi = i;
    } else if (v.value() == *best) {
      hi = i;
    }
  }
  return {lo, hi};
}

// Roots of F - w G (w = nullptr: roots of G) in the residue class of a at the
// Gauss point, or in the class of infinity when a is null. Newton polygon count.
int roots_in_class(const HomogeneousPair& m, const Scalar* w, const Scalar* a) {
  std::vector<Scalar> h;
  for (std::size_t i = 0; i < m.F.size(); ++i) h.push_back(w ? m.F[i] - *w * m.G[i] : m.G[i]);
  if (!a) return m.d - min_indices(h).second;
  return min_indices(taylor_shift(h, *a)).first;
}

// Oracle for the depth at xi_g toward a (a null: infinity) from preimage counts
// of classical targets in the directions 0, 1, infinity.
int depth_oracle(const HomogeneousPair& m, const Scalar* a, const std::optional<ClosedPoint>& constant_dir) {
  const FieldConfig* cfg = m.cfg;
  Scalar zero(cfg, 0L), one(cfg, 1L);
  std::vector<std::pair<ClosedPoint, const Scalar*>> targets{
      {ClosedPoint::rational(residue_from_int(cfg, 0)), &zero},
      {ClosedPoint::rational(residue_from_int(cfg, 1)), &one},
      {ClosedPoint::infinity(), nullptr}};
  std::optional<int> best;
  for (const auto& [b, w] : targets) {
    if (constant_dir && b == *constant_dir) continue;
    int n = roots_in_class(m, w, a);
    if (!best || n < *best) best = n;
  }
  return *best;
}

}  // namespace

TEST_CASE("intrinsic_reduction examples") {
  auto c5 = padic_field(5);
  TypeIIPoint g = TypeIIPoint::gauss(c5);
  IntrinsicReduction z2 = intrinsic_reduction(parse_map("z^2", c5), g);
  CHECK(z2.fixed);
  CHECK(z2.str() == "Fixed(z^2)");
  IntrinsicReduction pz2 = intrinsic_reduction(parse_map("5*z^2", c5), g);
  CHECK(!pz2.fixed);
  CHECK(pz2.constant_direction == rat(c5, 0));
  CHECK(pz2.image == P(c5, "0@-1"));
  CHECK(pz2.constant_direction == direction_of(g, pz2.image).tag);
  Fixture lox = loxodromic_fixture();
  IntrinsicReduction lr = intrinsic_reduction(lox.map(), TypeIIPoint::gauss(lox.cfg));
  CHECK(lr.fixed);
  // Residues print in 0..p-1, so -z shows as 2*z over F_3.
  CHECK(lr.str() == "Fixed(2*z)");
  CHECK(lr.is_fixed_direction(rat(lox.cfg, 0)));
  CHECK(lr.is_fixed_direction(ClosedPoint::infinity()));
  CHECK(!lr.is_fixed_direction(rat(lox.cfg, 1)));
}

TEST_CASE("depth_profile examples") {
  auto c5 = padic_field(5);
  TypeIIPoint g = TypeIIPoint::gauss(c5);
  DepthProfile z2 = depth_profile(parse_map("z^2", c5), g);
  CHECK(z2.dep.empty());
  CHECK(z2.point_mass == 2);
  DepthProfile pz2 = depth_profile(parse_map("5*z^2", c5), g);
  CHECK(pz2.dep == std::vector<std::pair<ClosedPoint, int>>{{ClosedPoint::infinity(), 2}});
  CHECK(pz2.point_mass == 0);
  Fixture lox = loxodromic_fixture();
  DepthProfile lp = depth_profile(lox.map(), TypeIIPoint::gauss(lox.cfg));
  CHECK(lp.dep == std::vector<std::pair<ClosedPoint, int>>{{rat(lox.cfg, 1), 1}});
  CHECK(lp.point_mass == 1);
  CHECK(lp.total_mass() == 2);
}

TEST_CASE("depth of a monomial") {
  // a z^d with v(a) = k at xi_g: fixed with point mass d when k = 0; otherwise
  // the preimage of xi_g is the circle |z| = p^(k/d), all mass toward infinity
  // when k > 0 and toward 0 when k < 0.
  for (unsigned long p : {2UL, 3UL, 7UL}) {
    auto cfg = padic_field(p);
    for (int d = 2; d <= 5; ++d)
      for (int k = -3; k <= 3; ++k) {
        Scalar a = Scalar(cfg, 2L + static_cast<long>(p)).times_uniformizer_pow(k);
        if (p == 2) a = Scalar(cfg, 3L).times_uniformizer_pow(k);
        Form F(static_cast<std::size_t>(d + 1), Scalar(cfg, 0L)), G(static_cast<std::size_t>(d + 1), Scalar(cfg, 0L));
        F[static_cast<std::size_t>(d)] = a;
        G[0] = Scalar(cfg, 1L);
        DepthProfile prof = depth_profile(HomogeneousPair(F, G), TypeIIPoint::gauss(cfg));
        if (k == 0) {
          CHECK(prof.point_mass == d);
          CHECK(prof.dep.empty());
        } else {
          CHECK(prof.point_mass == 0);
          CHECK(prof.dep_of(k > 0 ? ClosedPoint::infinity() : rat(cfg, 0)) == d);
        }
      }
  }
}

TEST_CASE("depth_profile agrees with Newton polygon preimage counts") {
  std::mt19937 rng(31);
  int checked = 0;
  for (auto cfg : {padic_field(2), padic_field(3), padic_field(5), padic_field(3, 2)}) {
    for (int i = 0; i < 40; ++i) {
      HomogeneousPair m = random_quadratic(rng, cfg);
      TypeIIPoint x = random_point(rng, cfg, 1);
      HomogeneousPair c = normalize(conjugate(m, x.frame()));
      IntrinsicReduction ir = intrinsic_reduction(m, x);
      DepthProfile prof = depth_profile(ir, m.d);
      std::optional<ClosedPoint> cdir;
      if (!ir.fixed) cdir = ir.constant_direction;
      CHECK(prof.dep_of(ClosedPoint::infinity()) == depth_oracle(c, nullptr, cdir));
      for (long a = 0; a < static_cast<long>(cfg->p); ++a) {
        Scalar s(cfg, a);
        CHECK(prof.dep_of(rat(cfg, a)) == depth_oracle(c, &s, cdir));
      }
      ++checked;
    }
  }
  CHECK(checked == 160);
}

TEST_CASE("tangent_image examples") {
  auto c5 = padic_field(5);
  TypeIIPoint g = TypeIIPoint::gauss(c5);
  HomogeneousPair z2 = parse_map("z^2", c5);
  CHECK(tangent_image(z2, g, Direction{g, rat(c5, 0)}).tag == rat(c5, 0));
  CHECK(tangent_image(z2, g, Direction{g, rat(c5, 2)}).tag == rat(c5, 4));
  Fixture lox = loxodromic_fixture();
  TypeIIPoint lg = TypeIIPoint::gauss(lox.cfg);
  CHECK(tangent_image(lox.map(), lg, Direction{lg, rat(lox.cfg, 1)}).tag == rat(lox.cfg, 2));
  HomogeneousPair pz2 = parse_map("5*z^2", c5);
  Direction out = tangent_image(pz2, g, Direction{g, ClosedPoint::infinity()});
  CHECK(out.base == P(c5, "0@-1"));
  CHECK(in_direction(out, g));
  CHECK_THROWS_AS(tangent_image(z2, g, Direction{P(c5, "0@1"), rat(c5, 0)}), Error);
}

TEST_CASE("probe tangent map agrees with the algebraic one") {
  // The probe needs fine steps; the same fixture at e = 8.
  Fixture lox = loxodromic_fixture(8);
  HomogeneousPair m = lox.map();
  int compared = 0;
  for (const char* pt : {"0@0", "4@-1/4", "0@1/2", "2@-1/8"}) {
    TypeIIPoint x = P(lox.cfg, pt);
    for (const ClosedPoint& u : {rat(lox.cfg, 0), rat(lox.cfg, 1), rat(lox.cfg, 2), ClosedPoint::infinity()}) {
      Direction v{x, u};
      CHECK(tangent_image_probe(m, x, v) == tangent_image(m, x, v));
      ++compared;
    }
  }
  CHECK(compared == 16);
}

TEST_CASE("local_degree examples") {
  auto c5 = padic_field(5);
  CHECK(local_degree(parse_map("z^2", c5), TypeIIPoint::gauss(c5)) == 2);
  NormalFormSpec lox = loxodromic_spec();
  CHECK(local_degree(lox.map(), TypeIIPoint::gauss(lox.cfg)) == 1);
  CHECK(local_degree(lox.map(), lox.xi_m()) == 2);
  NormalFormSpec par = parabolic_spec();
  CHECK(local_degree(par.map(), par.xi_m()) == 2);
}

TEST_CASE("directional_surplus_degrees examples") {
  auto c5 = padic_field(5);
  TypeIIPoint g = TypeIIPoint::gauss(c5);
  auto entry = [](const LocalDegreeData& d, const ClosedPoint& u) {
    for (const auto& e : d.entries)
      if (e.u == u) return e;
    FAIL("direction missing");
    return DirectionalEntry{};
  };
  LocalDegreeData z2 = directional_surplus_degrees(parse_map("z^2", c5), g);
  CHECK(entry(z2, rat(c5, 0)).m == 2);
  CHECK(entry(z2, rat(c5, 0)).s == 0);
  LocalDegreeData pz2 = directional_surplus_degrees(parse_map("5*z^2", c5), g);
  DirectionalEntry inf = entry(pz2, ClosedPoint::infinity());
  CHECK(inf.m == 2);
  CHECK(inf.s == 0);
  CHECK(inf.indicator);
  CHECK(inf.dep == 2);
  Fixture lox = loxodromic_fixture();
  LocalDegreeData ld = directional_surplus_degrees(lox.map(), TypeIIPoint::gauss(lox.cfg));
  DirectionalEntry one = entry(ld, rat(lox.cfg, 1));
  CHECK(one.m == 1);
  CHECK(one.s == 1);
  CHECK(!one.indicator);
  for (const auto* d : {&z2, &pz2, &ld}) {
    CHECK(d->argument_ok);
    CHECK(d->preimage_rule);
    CHECK(d->surplus_rule);
  }
}

TEST_CASE("mass, argument principle and sum rules on random pairs") {
  std::mt19937 rng(2026);
  int n = 0;
  for (auto cfg : {padic_field(2), padic_field(3), padic_field(5), padic_field(3, 2)}) {
    for (int i = 0; i < 25; ++i) {
      HomogeneousPair m = random_quadratic(rng, cfg);
      TypeIIPoint x = random_point(rng, cfg);
      DepthProfile prof = depth_profile(m, x);
      CHECK(prof.total_mass() == 2);
      LocalDegreeData ld = directional_surplus_degrees(m, x);
      INFO(x.str());
      CHECK(ld.failures.empty());
      CHECK(ld.local_degree >= 1);
      CHECK(ld.local_degree <= 2);
      for (const auto& e : ld.entries) {
        CHECK(e.m >= 1);
        CHECK(e.m <= ld.local_degree);
        CHECK(e.s >= 0);
        CHECK(e.s <= 2 - ld.local_degree);
      }
      ++n;
    }
  }
  CHECK(n == 100);
}

TEST_CASE("directional degree 1 gives local degree 1 along the germ") {
  // z^2 over p = 3: injective on D(1, r) for r < 1, degree 2 on every disk about 0.
  auto cfg = padic_field(3, 4);
  HomogeneousPair z2 = parse_map("z^2", cfg);
  TypeIIPoint g = TypeIIPoint::gauss(cfg);
  TangentData td = tangent_data(z2, g);
  REQUIRE(td.directional_degree(rat(cfg, 1)) == 1);
  REQUIRE(td.directional_degree(rat(cfg, 0)) == 2);
  for (int k = 1; k <= 3; ++k) {
    CHECK(local_degree(z2, point_in_direction(Direction{g, rat(cfg, 1)}, frac(k, 4))) == 1);
    CHECK(local_degree(z2, point_in_direction(Direction{g, rat(cfg, 0)}, frac(k, 4))) == 2);
  }
  // The loxodromic fixture is degree 1 at xi_g; R(phi) starts at distance 1/2 toward 1.
  NormalFormSpec lox = loxodromic_spec(8);
  HomogeneousPair m = lox.map();
  TypeIIPoint lg = TypeIIPoint::gauss(lox.cfg);
  TangentData lt = tangent_data(m, lg);
  for (const ClosedPoint& u : {rat(lox.cfg, 0), rat(lox.cfg, 1), rat(lox.cfg, 2), ClosedPoint::infinity()}) {
    REQUIRE(lt.directional_degree(u) == 1);
    for (int k = 1; k <= 3; ++k) CHECK(local_degree(m, point_in_direction(Direction{lg, u}, frac(k, 8))) == 1);
  }
  // At xi_M the critical points 4 +- sqrt(-24) sit in the directions 1 and 2,
  // which carry m = 2; the direction back to xi_g has m = 1.
  TypeIIPoint xm = lox.xi_m();
  TangentData mt = tangent_data(m, xm);
  Direction up = direction_of(xm, lg);
  CHECK(mt.directional_degree(up.tag) == 1);
  for (long a : {1L, 2L}) {
    REQUIRE(mt.directional_degree(rat(lox.cfg, a)) == 2);
    for (int k = 1; k <= 3; ++k) CHECK(local_degree(m, point_in_direction(Direction{xm, rat(lox.cfg, a)}, frac(k, 8))) == 2);
  }
  for (int k = 1; k <= 3; ++k) CHECK(local_degree(m, point_in_direction(up, frac(k, 8))) == 1);
}

TEST_CASE("semistability examples") {
  auto c5 = padic_field(5);
  TypeIIPoint g = TypeIIPoint::gauss(c5);
  CHECK(semistability_check(parse_map("z^2", c5), g) == Semistability::Stable);
  CHECK(semistability_check(parse_map("5*z^2", c5), g) == Semistability::Unstable);
  CHECK(semistability_check(parse_map("5*z^2", c5), P(c5, "0@1")) == Semistability::Stable);
  Fixture lox = loxodromic_fixture();
  CHECK(semistability_check(lox.map(), TypeIIPoint::gauss(lox.cfg)) == Semistability::Stable);
  CHECK_THROWS_AS(semistability_check(parse_map("z + 1", c5), g), Error);
  CHECK(to_string(Semistability::SemistableNotStable) == "SemistableNotStable");
}

TEST_CASE("slope_from examples") {
  auto c5 = padic_field(5);
  TypeIIPoint g = TypeIIPoint::gauss(c5);
  HomogeneousPair z2 = parse_map("z^2", c5), pz2 = parse_map("5*z^2", c5);
  IntrinsicReduction a = intrinsic_reduction(z2, g), b = intrinsic_reduction(pz2, g);
  CHECK(slope_from(depth_profile(a, 2), a, rat(c5, 0)) == Q("1/2"));
  CHECK(slope_from(depth_profile(b, 2), b, ClosedPoint::infinity()) == Q("-1/2"));
  CHECK(slope_from(depth_profile(b, 2), b, rat(c5, 1)) == Q("3/2"));
  // The constant direction counts as fixed.
  CHECK(slope_from(depth_profile(b, 2), b, rat(c5, 0)) == Q("1/2"));
}
