#pragma once

#include <string>
#include <vector>

namespace expcurve {

/// e^{1/z} at z = x + iy, i.e. e^{(x - iy)/(x^2+y^2)}.
struct FieldSample {
  double x = 0, y = 0;
  double re = 0, im = 0, abs = 0;
  /// |z| below the double-precision threshold: evaluated at 50 digits.
  bool high_precision = false;
  /// The modulus overflows a double; re/im/abs hold +-inf or 0 with the correct signs.
  bool saturated = false;
};

/// Throws std::domain_error at the origin (essential singularity).
FieldSample eval_field(double x, double y);

/// Real roots of F2(c, y) = c^4 - 2c^2 y^2 - 3y^4 - 2c y^2, from 3t^2 + 2t(c^2+c) - c^4 = 0
/// with t = y^2, cross-checked against bisection.
struct InflectionRoots {
  double c = 0;
  std::vector<double> roots;
  /// Positive root in t = y^2.
  double t = 0;
  /// Largest relative disagreement with the bisection roots.
  double bisection_gap = 0;
  /// F2(c, .) has a (numerically) double real root.
  bool boundary = false;
};

InflectionRoots inflection_roots(double c);

struct WidthMeasurement {
  double c = 0;
  double measured = 0;
  double predicted = 0;
  double rel_error = 0;
};

/// R_c (c > 0): width of the central root pair, against 2 sqrt(1/2) c^{3/2}.
WidthMeasurement right_width(double c);
/// L_{-c} (c > 0): width of the central pair at x = -c, against 2 sqrt(2/3) c^{1/2}.
WidthMeasurement left_width(double c);

struct WidthRatio {
  double c = 0;
  double ratio = 0;
  double predicted = 0;
  double rel_error = 0;
};

/// R_c / L_{-c} against sqrt(3/4) c.
WidthRatio width_ratio(double c);

struct PowerLawFit {
  double exponent = 0;
  double prefactor = 0;
  double r_squared = 0;
};

/// Least squares fit of log y = log k + alpha log x.
PowerLawFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys);

/// Log-spaced values from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, int n);

/// Columns c, R_measured, R_predicted, L_measured, L_predicted, ratio, rel_error.
std::string width_sweep_csv(const std::vector<double>& cs);

}  // namespace expcurve
