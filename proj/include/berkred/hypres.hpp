#pragma once

#include <string>
#include <vector>

#include "berkred/redtheory.hpp"

namespace berk {

// Coefficient valuations of phi along the ray of disks {zeta(c, t)} about a
// fixed center c. Everything the slope formula needs along the ray is read
// off these lines, so depths and breakpoints are exact for any rational t.
//
// Full data: P(u) = F(c+u) - c G(c+u), Q(u) = G(c+u); at parameter t the
// coefficient lines are v(P_i) - i t and v(Q_i) - (i+1) t.
// Source data: A(u) = F(c+u), B(u) = G(c+u) with lines v(A_i) - i t and
// v(B_i) - i t (target frame fixed at the Gauss point).
class RayData {
public:
  RayData(const HomogeneousPair& m, const Scalar& center);

  const Scalar& center() const { return center_; }
  int degree() const { return d_; }

  // Depth toward the center (down) and toward infinity (up) at zeta(c, t).
  int dep_down(const Rational& t, bool source) const;
  int dep_up(const Rational& t, bool source) const;
  // Whether the down (resp. up) direction is fixed by phi~ at zeta(c, t).
  bool fixed_down(const Rational& t) const;
  bool fixed_up(const Rational& t) const;
  // Slope of hypRes at zeta(c, t) walking up or down.
  Rational slope(const Rational& t, bool up) const;
  // Every t where the set of minimal lines can change.
  std::vector<Rational> breakpoints(bool source) const;

private:
  struct Lines {
    std::vector<ValExp> v;
    int shift = 0;  // line i has slope -(i + shift)
  };
  struct Argmin {
    int low = -1, high = -1;  // -1: the form does not attain the minimum
  };
  void argmins(const Rational& t, bool source, Argmin& first, Argmin& second) const;

  Scalar center_;
  int d_;
  Lines P_, Q_, A_, B_;
};

Rational ord_res_at(const HomogeneousPair& m, const TypeIIPoint& x);
Rational hypres_eval(const HomogeneousPair& m, const TypeIIPoint& x);
Rational slope_at(const HomogeneousPair& m, const TypeIIPoint& x, const Direction& v);

// The minimum locus of hypRes: a point, or a segment for odd degree.
struct MinLocus {
  TypeIIPoint a, b;
  bool segment = false;
  std::string str() const { return segment ? "[" + a.str() + ", " + b.str() + "]" : a.str(); }
  friend bool operator==(const MinLocus& x, const MinLocus& y) {
    if (x.segment != y.segment) return false;
    if (!x.segment) return x.a == y.a;
    return (x.a == y.a && x.b == y.b) || (x.a == y.b && x.b == y.a);
  }
};

struct MinLocusOptions {
  int max_moves = 64;
};

MinLocus min_locus(const HomogeneousPair& m, const MinLocusOptions& opt = {});

struct ProfileRow {
  TypeIIPoint point;
  Rational ord_res, hyp_res;
};

// Samples evenly spaced (by hyperbolic length) along a segment, endpoints included.
std::vector<ProfileRow> profile(const HomogeneousPair& m, const Segment& seg, int samples);

}  // namespace berk
