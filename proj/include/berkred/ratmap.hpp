#pragma once

#include <string>
#include <vector>

#include "berkred/valfield.hpp"

namespace berk {

// Binary form of degree size()-1; entry i is the coefficient of X^i Y^(d-i).
using Form = std::vector<Scalar>;

// z -> (a z + b) / (c z + d)
struct Mobius {
  Scalar a, b, c, d;

  static Mobius identity(const FieldConfig* cfg);
  static Mobius affine(const Scalar& scale, const Scalar& shift);  // z -> scale*z + shift
  static Mobius inversion(const FieldConfig* cfg);                 // z -> 1/z

  const FieldConfig* config() const { return a.config(); }
  Scalar det() const { return a * d - b * c; }
  Mobius inverse() const;  // adjugate, projectively the inverse
  // (*this)(other(z))
  Mobius compose(const Mobius& other) const;
  bool is_affine() const { return c.is_zero(); }
  std::string str() const;
};

// phi = F/G of degree d, as a lift (F, G) to K[X, Y].
struct HomogeneousPair {
  const FieldConfig* cfg = nullptr;
  int d = 0;
  Form F, G;

  HomogeneousPair() = default;
  HomogeneousPair(Form f, Form g);
  std::string str() const;
};

HomogeneousPair parse_map(const std::string& text, const FieldConfig* cfg);

// Scale so that the minimum coefficient valuation is 0.
HomogeneousPair normalize(const HomogeneousPair& m);
Rational min_coeff_valuation(const HomogeneousPair& m);

Scalar resultant(const HomogeneousPair& m);
Scalar form_resultant(const Form& f, const Form& g);

// Lift of g^-1 o phi o g (target transformed by the adjugate of g).
HomogeneousPair conjugate(const HomogeneousPair& m, const Mobius& g);
// Lift of g o phi o h, without normalization.
HomogeneousPair pre_post(const Mobius& g, const HomogeneousPair& m, const Mobius& h);
// outer o inner
HomogeneousPair compose(const HomogeneousPair& outer, const HomogeneousPair& inner);
HomogeneousPair iterate(const HomogeneousPair& m, int j, int degree_cap = 64);

// Projective equality of two lifts.
bool projectively_equal(const HomogeneousPair& a, const HomogeneousPair& b);

// Binary form over the residue field: affine part f in x = X/Y plus degree.
struct ResForm {
  ResPoly f;
  int d = 0;
  bool is_zero() const { return f.is_zero(); }
  std::string str(const std::string& var = "z") const;
};

// A point of P^1 over an extension of the residue field.
struct ResPoint {
  bool inf = false;
  Residue a;
  static ResPoint infinity() { return ResPoint{true, Residue()}; }
  static ResPoint finite(Residue r) { return ResPoint{false, std::move(r)}; }
  friend bool operator==(const ResPoint& x, const ResPoint& y) {
    if (x.inf || y.inf) return x.inf == y.inf;
    return x.a == y.a;
  }
  std::string str() const { return inf ? "inf" : a.str(); }
};

struct ReducedMap {
  int d = 0;
  ResForm F, G;   // coefficient reductions
  ResForm H;      // hole divisor gcd(F, G), with gcd(0, g) = g
  ResForm Fd, Gd; // divided map F/H : G/H
  int divided_degree = 0;
  bool constant = false;
  ResPoint constant_value;  // when constant

  // Divided map at a point of P^1 over some residue extension.
  ResPoint eval(const ResPoint& z) const;
  // Image of a closed point under the divided map.
  ClosedPoint image(const ClosedPoint& u) const;
  std::string divided_str() const;
};

// Requires a normalized pair.
ReducedMap reduce_map(const HomogeneousPair& m);

// Homogeneous evaluation at a residue point, (F(z), G(z)) as forms.
ResPoint eval_forms(const ResForm& F, const ResForm& G, const ResPoint& z);
Residue eval_form(const ResForm& F, const ResPoint& z);

ResForm reduce_form(const Form& f, const FieldConfig* cfg);
int form_multiplicity(const ResForm& F, const ClosedPoint& u);

Scalar eval_affine(const Form& f, const Scalar& z);

}  // namespace berk
