#pragma once

#include <array>
#include <string>
#include <vector>

#include "expcurve/arith/ratfunc.hpp"
#include "expcurve/arith/upoly.hpp"
#include "expcurve/elliptic.hpp"

namespace expcurve {

using AffinePoint = std::array<Rational, 2>;

/// (x, y) -> (sx(x, y), sy(x, y)); base points are where a denominator vanishes.
struct RationalMap {
  RationalFunction sx, sy;
  std::array<std::string, 2> vars{"x", "y"};

  /// Exact image; throws std::domain_error("base point ...") when a denominator vanishes.
  AffinePoint operator()(const AffinePoint& p) const;
  RationalMap compose(const RationalMap& inner) const;
  std::array<std::string, 2> components() const;
};

/// (x, y) -> (x/(x^2+y^2), -y/(x^2+y^2)), i.e. z -> 1/z in conjugate-reciprocal form.
RationalMap inversion_map();

/// Numerator of F(x/(x^2+y^2), -y/(x^2+y^2)) with the modulus powers cleared, made primitive.
/// Throws std::invalid_argument if x^2+y^2 divides F.
Poly invert_curve(const Poly& F);

/// F(x, m x) = sign * x^k * (c_j x^j + ... + c_0) with c_i in Q[m], sign chosen so that
/// c_j has a positive leading coefficient.
struct PencilSlice {
  int k = 0;
  int sign = 1;
  std::vector<UPoly<Rational>> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

PencilSlice slice_pencil(const Poly& F);

/// B^2 - 4AC = content * (m^2+1)^circle_power * quartic (quartic primitive, positive leading).
struct SliceDiscriminant {
  UPoly<Rational> D;
  Rational content;
  int circle_power = 0;
  UPoly<Rational> quartic;
  bool degenerate = false;
};

/// Throws std::invalid_argument unless the slice is quadratic in x.
SliceDiscriminant slice_discriminant(const PencilSlice& s);

/// a m^4 + b m^3 + c m^2 + d m + e.
struct BinaryQuartic {
  Rational a, b, c, d, e;
  static BinaryQuartic from(const UPoly<Rational>& q);
};

struct QuarticInvariants {
  Rational I, J, j;
  /// Short model y^2 = x^3 - 27 I x - 27 J.
  Rational A, B;
};

/// Throws std::domain_error("singular quartic") when 4I^3 - J^2 = 0.
QuarticInvariants quartic_invariants(const BinaryQuartic& q);

struct PipelineStage {
  std::string name;
  Poly equation;
  std::array<std::string, 2> vars{"x", "y"};
  /// Map to the next stage (empty components for the last stage).
  std::array<std::string, 2> map_to_next;
};

struct PipelineIdentity {
  std::string name;
  std::string statement;
  bool holds = false;
  /// Numerator of lhs - rhs.
  Poly residual;
};

struct PipelineRecord {
  std::vector<PipelineStage> stages;
  std::array<Integer, 5> weierstrass{};
  std::vector<PipelineIdentity> identities;
  bool all_hold() const;
};

/// C3 -> Q -> W -> E with every identity checked exactly; throws InconsistencyError with
/// the residual when one fails.
PipelineRecord c3_pipeline();
std::string pipeline_to_json(const PipelineRecord& r);

/// Stages of the chain, in order: "C3", "Q" (G3 = 0), "W" (y^2 = 6x^3+39x^2+72x+36), "E".
const std::vector<std::string>& pipeline_stage_names();
Poly pipeline_stage_equation(const std::string& stage);

struct TransportStep {
  std::string stage;
  AffinePoint point;
};

/// Moves a point stage by stage, verifying membership at every stage. Throws
/// std::invalid_argument if the start point is off its curve, std::domain_error("base point")
/// when a map is undefined.
std::vector<TransportStep> transport_path(const AffinePoint& p, const std::string& from, const std::string& to);
AffinePoint transport_point(const AffinePoint& p, const std::string& from, const std::string& to);

struct C2Parametrization {
  /// x(m) and y(m) = m x(m), as functions of the first variable (printed as m).
  RationalFunction x, y;
  bool identity_holds = false;
  bool matches_printed = false;
};

C2Parametrization parametrize_c2();

}  // namespace expcurve
