#pragma once

#include <string>
#include <utility>
#include <vector>

#include "berkred/berktree.hpp"
#include "berkred/ratmap.hpp"

namespace berk {

// phi~_x: the residue map when phi(x) = x, else the constant direction toward phi(x).
struct IntrinsicReduction {
  TypeIIPoint base;
  TypeIIPoint image;
  bool fixed = false;
  ReducedMap one;               // reduction of sigma_x^-1 phi sigma_x
  ClosedPoint constant_direction;  // NonFixed only

  // phi~_x(u) = u; in the NonFixed case only the constant direction is fixed.
  bool is_fixed_direction(const ClosedPoint& u) const;
  std::string str() const;
};

IntrinsicReduction intrinsic_reduction(const HomogeneousPair& m, const TypeIIPoint& x);

struct DepthProfile {
  TypeIIPoint base;
  int d = 0;
  std::vector<std::pair<ClosedPoint, int>> dep;  // support only
  int point_mass = 0;

  int dep_of(const ClosedPoint& u) const;
  // Sum of dep weighted by the degree of the closed point, plus point mass.
  int total_mass() const;
  std::string str() const;
};

DepthProfile depth_profile(const HomogeneousPair& m, const TypeIIPoint& x);
DepthProfile depth_profile(const IntrinsicReduction& ir, int d);

// Reduction of sigma_phi(x)^-1 phi sigma_x; nonconstant of degree deg_x(phi).
struct TangentData {
  TypeIIPoint base, image;
  ReducedMap two;
  int local_degree() const { return two.divided_degree; }
  // Tangent map on closed points.
  ClosedPoint push(const ClosedPoint& u) const { return two.image(u); }
  // Directional multiplicity m_u of the residue map at u.
  int directional_degree(const ClosedPoint& u) const;
  // Hole multiplicity s_u.
  int surplus(const ClosedPoint& u) const { return form_multiplicity(two.H, u); }
};

TangentData tangent_data(const HomogeneousPair& m, const TypeIIPoint& x);
TangentData tangent_data(const HomogeneousPair& m, const TypeIIPoint& x, const TypeIIPoint& image);

int local_degree(const HomogeneousPair& m, const TypeIIPoint& x);
Direction tangent_image(const HomogeneousPair& m, const TypeIIPoint& x, const Direction& v);

// Tangent image by probing points toward v with shrinking steps; a cross-check
// for the algebraic tangent_image. Requires a rational direction.
Direction tangent_image_probe(const HomogeneousPair& m, const TypeIIPoint& x, const Direction& v, int max_halvings = 8);

struct DirectionalEntry {
  ClosedPoint u;
  int m = 0;    // directional degree
  int s = 0;    // surplus
  int dep = 0;  // one-frame depth
  ClosedPoint image;
  bool indicator = false;  // x lies in U(phi_* u)
};

struct LocalDegreeData {
  TypeIIPoint base;
  int local_degree = 0;
  std::vector<DirectionalEntry> entries;
  bool argument_ok = true;    // dep = s + m [indicator]
  bool preimage_rule = true;  // preimage multiplicities add up to the local degree
  bool surplus_rule = true;   // surpluses add up to d - local degree
  std::vector<std::string> failures;
};

LocalDegreeData directional_surplus_degrees(const HomogeneousPair& m, const TypeIIPoint& x);

enum class Semistability { Stable, SemistableNotStable, Unstable };
std::string to_string(Semistability s);

Semistability semistability_check(const HomogeneousPair& m, const TypeIIPoint& x);
Semistability semistability_from(const DepthProfile& prof, const IntrinsicReduction& ir);

// Derivative of hypRes at x in direction u.
Rational slope_from(const DepthProfile& prof, const IntrinsicReduction& ir, const ClosedPoint& u);

}  // namespace berk
