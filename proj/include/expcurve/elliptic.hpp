#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "expcurve/arith/rational.hpp"

namespace expcurve {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer coefficients.
struct WeierstrassCurve {
  Integer a1, a2, a3, a4, a6;
  Integer b2, b4, b6, b8, c4, c6, disc;
  Rational j;

  /// Computes the invariants; throws std::domain_error("singular curve") when disc = 0.
  static WeierstrassCurve make(const Integer& a1, const Integer& a2, const Integer& a3, const Integer& a4,
                               const Integer& a6);
  static WeierstrassCurve short_form(const Integer& A, const Integer& B) { return make(0, 0, 0, A, B); }

  std::array<Integer, 5> coefficients() const { return {a1, a2, a3, a4, a6}; }
  /// "[a1,a2,a3,a4,a6]"
  std::string label() const;
  friend bool operator==(const WeierstrassCurve& a, const WeierstrassCurve& b) {
    return a.coefficients() == b.coefficients();
  }
};

/// Parses "[a1,a2,a3,a4,a6]" (whitespace allowed); "[a4,a6]" is accepted as short form.
WeierstrassCurve parse_curve(const std::string& text);

struct CurvePoint {
  bool infinity = false;
  Rational x, y;

  static CurvePoint at_infinity() { return {true, Rational(0), Rational(0)}; }
  static CurvePoint affine(const Rational& x, const Rational& y) { return {false, x, y}; }
  bool integral() const { return infinity || (x.get_den() == 1 && y.get_den() == 1); }
  friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
    return a.infinity == b.infinity && (a.infinity || (a.x == b.x && a.y == b.y));
  }
  friend bool operator<(const CurvePoint& a, const CurvePoint& b);
};

std::string to_string(const CurvePoint& p);

bool on_curve(const WeierstrassCurve& W, const CurvePoint& P);
CurvePoint negate(const WeierstrassCurve& W, const CurvePoint& P);
/// Chord-tangent law; throws std::invalid_argument for points off the curve.
CurvePoint add(const WeierstrassCurve& W, const CurvePoint& P, const CurvePoint& Q);
/// n P by double-and-add (negative n allowed).
CurvePoint multiple(const WeierstrassCurve& W, const CurvePoint& P, long n);
/// Order if it is at most 12 (the Mazur bound), nullopt otherwise.
std::optional<int> torsion_order(const WeierstrassCurve& W, const CurvePoint& P);

struct TorsionGroup {
  /// Invariant factors, e.g. {2} or {2, 2}; empty for the trivial group.
  std::vector<int> structure;
  std::vector<CurvePoint> generators;
  std::vector<CurvePoint> points;
  int order() const { return static_cast<int>(points.size()); }
  std::string description() const;
};

/// Lutz-Nagell on the integral short model y^2 = x^3 - 27 c4 x - 54 c6, then mapped back.
TorsionGroup torsion(const WeierstrassCurve& W);

struct NonTorsionCertificate {
  bool non_torsion = false;
  /// Multiplier whose image is non-integral (or the torsion order when torsion).
  int n = 0;
  CurvePoint witness;
  std::string reason;
};

/// Requires an integral model; an n P with non-integral coordinates proves infinite order.
NonTorsionCertificate non_torsion_certificate(const WeierstrassCurve& W, const CurvePoint& P);

struct LocalReduction {
  Integer p;
  int fp = 0;
  /// "good", "split multiplicative", "nonsplit multiplicative" or "additive".
  std::string kind;
  std::string kodaira;
  int vdisc = 0;
};

/// Tate's algorithm at p (all primes, including 2 and 3); on return `model` holds a model
/// minimal at p.
LocalReduction tate(const WeierstrassCurve& W, const Integer& p, WeierstrassCurve* model = nullptr);

struct Conductor {
  Integer N;
  std::vector<LocalReduction> local;
};

Conductor conductor(const WeierstrassCurve& W);

/// Global minimal model with a1, a3 in {0,1} and a2 in {-1,0,1}.
WeierstrassCurve minimal_model(const WeierstrassCurve& W);
bool is_minimal(const WeierstrassCurve& W);

/// Quadratic twist by d, returned as a minimal model.
WeierstrassCurve quadratic_twist(const WeierstrassCurve& W, const Integer& d);

/// Squarefree d with W' isomorphic to the twist of W by d, verified by twisting back;
/// nullopt when the curves are not quadratic twists of each other.
std::optional<Integer> twist_detect(const WeierstrassCurve& W, const WeierstrassCurve& Wp);

/// All integral points with |x| <= bound, sorted, (x, y) and (x, -y) both listed.
/// The x-range is split across `threads` workers (0 means hardware concurrency).
std::vector<CurvePoint> integral_points(const WeierstrassCurve& W, long bound, unsigned threads = 0);

std::string reduction_to_json(const LocalReduction& r);
std::string curve_to_json(const WeierstrassCurve& W);

}  // namespace expcurve
