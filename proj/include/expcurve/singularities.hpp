#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "expcurve/arith/bipoly.hpp"
#include "expcurve/errors.hpp"

namespace expcurve {

/// Point (X:Y:Z) of the projective plane over Q(i).
struct ProjectivePoint {
  GaussianRational X;
  GaussianRational Y;
  GaussianRational Z{1};

  static ProjectivePoint affine(const GaussianRational& x, const GaussianRational& y) { return {x, y, GaussianRational(1)}; }
  bool at_infinity() const { return is_zero(Z); }
};

std::string to_string(const ProjectivePoint& p);

struct PuiseuxTerm {
  Rational exponent;
  std::string coefficient;
  std::complex<double> approx;
};

/// One local branch: y = sum c_k x^{e_k}, with ramification index e (number of conjugate roots).
struct PuiseuxBranch {
  int ramification_index = 1;
  int multiplicity = 1;
  std::vector<PuiseuxTerm> terms;
  bool terminates = false;
  std::string tangent;
  bool smooth() const { return multiplicity == 1; }
};

struct PuiseuxOptions {
  int extra_terms = 2;
  bool allow_exact = true;
};

struct PuiseuxResult {
  std::vector<PuiseuxBranch> branches;
  std::vector<Rational> branch_delta;
  std::vector<std::vector<Rational>> intersection;
  int root_count = 0;
  long delta = 0;
  long milnor = 0;
  int multiplicity = 0;
  bool exact = false;
  int digits = 0;
  /// Linear frame used: "identity", "swap" or "shear k".
  std::string frame = "identity";
};

/// Local branches at the origin of a squarefree germ F with F(0,0) = 0.
/// Exact over Q(i) when every edge polynomial splits there; otherwise certified
/// multiprecision (structure must agree at two working precisions).
PuiseuxResult newton_puiseux(const GaussPoly& F, const PuiseuxOptions& opt = {});
PuiseuxResult newton_puiseux(const Poly& F, const PuiseuxOptions& opt = {});

struct MilnorResult {
  long mu = 0;
  long shear = 0;
  unsigned seed = 0;
  int attempts = 0;
};

/// Exact local intersection number of F_x and F_y at the origin, via the order at x = 0
/// of Res_y after a random shear x <- x + k*y, k in 1..100 drawn from `seed`.
MilnorResult milnor_number(const GaussPoly& F, unsigned seed = 20240101);
MilnorResult milnor_number(const Poly& F, unsigned seed = 20240101);

struct SingularityReport {
  std::string point;
  ProjectivePoint where;
  int multiplicity = 0;
  int branches = 0;
  int smooth_branches = 0;
  int cuspidal_branches = 0;
  long milnor = 0;
  long delta = 0;
  bool ordinary = false;
  std::string method;
  std::vector<PuiseuxBranch> branch_data;
  unsigned seed = 0;
};

/// F moved so that P becomes the origin of an affine chart (over Q(i)).
GaussPoly local_equation(const Poly& F, const ProjectivePoint& P);

/// Full local analysis: Puiseux branches give delta and r, the resultant gives mu, and
/// mu = 2 delta - r + 1 is enforced (InconsistencyError otherwise).
SingularityReport delta_invariant(const Poly& F, const ProjectivePoint& P, unsigned seed = 20240101);
SingularityReport delta_invariant(const GaussPoly& local, const std::string& label, unsigned seed = 20240101);

/// Both circle points (+-i:1:0): multiplicity, tangent-cone ordinariness, delta.
/// Non-ordinary circle points fall back to the full local analysis.
std::array<SingularityReport, 2> circle_point_check(const Poly& F, unsigned seed = 20240101);

struct InfinityPoint {
  /// Points (t:1:0) with factor(t) = 0, or (1:0:0) when `factor` is empty.
  UPoly<Rational> factor;
  int multiplicity_in_leading_form = 1;
  bool singular = false;
  std::string description;
};

struct SingularLocus {
  std::vector<ProjectivePoint> affine;
  std::vector<ProjectivePoint> infinite;
  std::vector<InfinityPoint> infinity_factors;
  /// gcd of Res_y(F,F_x), Res_y(F,F_y), Res_y(F_x,F_y): c * x^k when certified.
  Poly certificate;
};

/// Affine singular points are certified to lie on x = 0 via resultants, then found there
/// exactly; points at infinity come from the squarefree factorization of the leading form.
/// Throws CertificationError with the witness factor otherwise.
SingularLocus certify_singular_locus(const Poly& F);

struct GenusReport {
  int degree = 0;
  std::vector<SingularityReport> reports;
  long genus = 0;
};

/// Riemann-Clebsch: (d-1)(d-2)/2 minus all deltas, affine and at infinity.
GenusReport genus(const Poly& F, unsigned seed = 20240101);

/// Closed form for g(C_{a,b}), with the even-b constants fitted to the genus table.
Rational genus_formula_exact(int a, int b);
long genus_formula(int a, int b);
/// The case split exactly as printed: for even b the first listed case that applies
/// (none applies when a is odd).
std::optional<Rational> printed_mixed_genus(int a, int b);
/// g(C_{0,n}) by the single-variable closed form; odd n uses (3n^2-12n+13)/4.
Rational pure_genus_formula(int n);
/// Printed single-variable variant, (3n^2+1)/4 for odd n.
Rational printed_pure_genus(int n);

/// Genus values of C_{a,b} for a, b <= 5 as tabulated (33 curves with a+b >= 2).
std::optional<long> tabulated_genus(int a, int b);

std::string singularity_report_to_json(const SingularityReport& r);
std::string genus_report_to_json(const GenusReport& g, std::optional<int> a = {}, std::optional<int> b = {});

}  // namespace expcurve
