#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "berkred/hypres.hpp"

namespace berk {

// omega z (z - b) / (z - a)
struct Loxodromic {
  Scalar omega, a, b;
};
// (z - b)(z - 1) / z
struct Parabolic {
  Scalar b;
};

struct NormalFormSpec {
  const FieldConfig* cfg = nullptr;
  std::variant<Loxodromic, Parabolic> form;

  // Throws when the constraints on omega, a, b fail.
  void validate() const;
  HomogeneousPair map() const;
  // xi_M: the disk about a (resp. 0) of radius sqrt|a - b| (resp. sqrt|b|).
  TypeIIPoint xi_m() const;
};

// A named test map with its field.
struct Fixture {
  std::string name;
  const FieldConfig* cfg;
  std::string map_text;
  HomogeneousPair map() const { return parse_map(map_text, cfg); }
};

Fixture loxodromic_fixture(int e = 2);
Fixture parabolic_fixture(int e = 2);
Fixture acyclic_fixture(int e = 1);
NormalFormSpec loxodromic_spec(int e = 2);
NormalFormSpec parabolic_spec(int e = 2);

enum class ReductionKind { TwoToOne, ConstantImage, BijectiveAcyclic, BijectiveCyclic, Unknown };
std::string to_string(ReductionKind k);

struct Classification {
  ReductionKind kind = ReductionKind::Unknown;
  int period = 0;  // BijectiveCyclic only
  TypeIIPoint xi_phi;
  std::optional<ClosedPoint> v1;  // bijective cases
  std::string note;               // certificate or reason for Unknown
  std::string str() const;
};

struct ClassifyOptions {
  int orbit_cap = 64;
};

Classification classify_reduction(const HomogeneousPair& m, const ClassifyOptions& opt = {});

struct RetractionOptions {
  int max_steps = 256;
};

// xi_0: nearest point of the ramification locus to xi_phi.
TypeIIPoint ramification_retraction(const HomogeneousPair& m, const Classification& c, const RetractionOptions& opt = {});
TypeIIPoint ramification_retraction(const HomogeneousPair& m);

struct DepthRow {
  int j = 0;
  int A = 0, B = 0, C = 0, point_mass = 0;
  int total() const { return A + B + C + point_mass; }
  // 2A + B = 2^j, which the recursions give past the period.
  bool balance() const { return 2 * A + B == (1 << j); }
  // C <= A <= (2^j - 2)/2 and B < (2^j - 1)/2.
  bool bounds() const { return C <= A && 2 * A <= (1 << j) - 2 && 2 * B < (1 << j) - 1; }
};

struct DepthSequences {
  int period = 0;
  TypeIIPoint xi_1;
  ClosedPoint w1, back;
  std::vector<DepthRow> rows;
  std::vector<std::string> failures;
  // Measured values that differ from the A_0 = 1 recursion or the closed form.
  std::vector<std::string> notes;
};

DepthSequences abc_sequences(const HomogeneousPair& m, int J);
// The geometric-sum closed form for A_j + B_j, logged next to the measurement.
Rational closed_form_ab(int j, int p);
DepthSequences abc_sequences(const HomogeneousPair& m, const Classification& c, const TypeIIPoint& xi_1, int J);

struct PerJ {
  int j = 0;
  MinLocus locus;
  Semistability verdict = Semistability::Unstable;
  DepthProfile depths;
  double millis = 0;
};

struct TheoremReport {
  const FieldConfig* cfg = nullptr;
  std::string map;
  Classification classification;
  std::optional<TypeIIPoint> xi_0;
  std::vector<PerJ> per_j;
  std::optional<DepthSequences> sequences;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

struct VerifyOptions {
  int degree_cap = 64;
  bool parallel = true;
};

TheoremReport verify_theorem(const HomogeneousPair& m, int J, const VerifyOptions& opt = {});

std::string rational_json(const Rational& q);
nlohmann::json point_json(const TypeIIPoint& x);
nlohmann::json to_json(const TheoremReport& r);

// Finite-difference slope of hypRes from x toward v: the first step h with
// equal quotients at h and h/2, or nullopt if the steps leave the value group.
std::optional<Rational> finite_difference_slope(const HomogeneousPair& m, const Direction& v, Rational h = Rational(1));

}  // namespace berk
