#pragma once

#include <string>

#include "berkred/ratmap.hpp"
#include "berkred/valfield.hpp"

namespace berk {

// The closed disk {z : v(z - center) >= -t}, i.e. radius p^t, as a point of
// the Berkovich line. The center is canonical: its pi-adic digit expansion
// truncated below valuation -t, so equal disks compare equal.
class TypeIIPoint {
public:
  TypeIIPoint() = default;
  TypeIIPoint(const Scalar& center, const Rational& t);
  static TypeIIPoint gauss(const FieldConfig* cfg) { return TypeIIPoint(Scalar(cfg, 0L), Rational(0)); }

  const FieldConfig* config() const { return center_.config(); }
  const Scalar& center() const { return center_; }
  const Rational& t() const { return t_; }

  // sigma(z) = pi^(-t e) z + center; sends the Gauss point to this point.
  Mobius frame() const;
  bool contains(const Scalar& z) const;
  // The disk of y lies inside the disk of this point.
  bool contains(const TypeIIPoint& y) const;
  std::string str() const;

  friend bool operator==(const TypeIIPoint& a, const TypeIIPoint& b) {
    return a.t_ == b.t_ && a.center_ == b.center_;
  }
  friend bool operator!=(const TypeIIPoint& a, const TypeIIPoint& b) { return !(a == b); }

private:
  Scalar center_;
  Rational t_;
};

// Throws RamificationError unless e*t is an integer.
void require_representable(const FieldConfig* cfg, const Rational& t);
bool representable(const FieldConfig* cfg, const Rational& t);

Scalar canonical_center(const Scalar& a, const Rational& t);

// "center@t"; "inf@t" is the disk about infinity, i.e. the point 0@(-t).
TypeIIPoint parse_point(const std::string& text, const FieldConfig* cfg);

// A tangent direction at a type II point, tagged by the residue point of the
// recentered target.
struct Direction {
  TypeIIPoint base;
  ClosedPoint tag;
  std::string str() const { return tag.str() + " at " + base.str(); }
  friend bool operator==(const Direction& a, const Direction& b) { return a.base == b.base && a.tag == b.tag; }
};

struct Segment {
  TypeIIPoint from, to;
  Rational length() const;
};

// Smallest disk containing both.
TypeIIPoint join(const TypeIIPoint& x, const TypeIIPoint& y);
Rational rho(const TypeIIPoint& x, const TypeIIPoint& y);
// The median of x, y and base.
TypeIIPoint wedge(const TypeIIPoint& x, const TypeIIPoint& y, const TypeIIPoint& base);

Direction direction_of(const TypeIIPoint& base, const TypeIIPoint& target);
// Direction toward a classical point; a null target means infinity.
Direction direction_to_classical(const TypeIIPoint& base, const Scalar* target);
// y lies in the component U(v).
bool in_direction(const Direction& v, const TypeIIPoint& y);
// The point at distance h from the base inside U(v); v must be rational.
TypeIIPoint point_in_direction(const Direction& v, const Rational& h);

TypeIIPoint point_along(const Segment& seg, const Rational& dist);

TypeIIPoint apply_mobius_point(const Mobius& g, const TypeIIPoint& x);

struct ImageOptions {
  int min_steps_before_cap = 16;
};

// phi(x) for a type II point x.
TypeIIPoint image_point(const HomogeneousPair& m, const TypeIIPoint& x, const ImageOptions& opt = {});

// Lift of sigma_y^-1 o phi o sigma_x, normalized.
HomogeneousPair two_frame(const HomogeneousPair& m, const TypeIIPoint& x, const TypeIIPoint& y);
// Lift of sigma_x^-1 o phi o sigma_x, normalized.
HomogeneousPair one_frame(const HomogeneousPair& m, const TypeIIPoint& x);

}  // namespace berk
