#include "expcurve/analytic.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "expcurve/numeric/mpcomplex.hpp"

namespace expcurve {

namespace {

constexpr double kHighPrecisionRadius = 1e-3;

using Hp = MpReal<50>;

Hp hp(double v) {
  Hp r;
  mpfr_set_d(r.backend().data(), v, MPFR_RNDN);
  return r;
}

double f2(double c, double y) {
  const long double C = c, Y = y, t = Y * Y;
  return static_cast<double>(C * C * C * C - 2 * C * C * t - 3 * t * t - 2 * C * t);
}

double bisect_positive_root(double c, double hi) {
  double lo = 0;
  // f2(c, 0) = c^4 > 0 and f2 < 0 beyond the root
  for (int k = 0; k < 400 && lo < hi; ++k) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    (f2(c, mid) > 0 ? lo : hi) = mid;
  }
  return lo + (hi - lo) / 2;
}

}  // namespace

FieldSample eval_field(double x, double y) {
  if (x == 0 && y == 0) throw std::domain_error("e^{1/z} has an essential singularity at the origin");
  FieldSample s;
  s.x = x;
  s.y = y;
  if (std::hypot(x, y) >= kHighPrecisionRadius) {
    const double r2 = x * x + y * y;
    const double u = x / r2, v = -y / r2;
    s.abs = std::exp(u);
    s.re = s.abs * std::cos(v);
    s.im = s.abs * std::sin(v);
    s.saturated = std::isinf(s.abs);
    return s;
  }
  s.high_precision = true;
  const Hp X = hp(x), Y = hp(y);
  const Hp r2 = X * X + Y * Y;
  const Hp u = X / r2, v = -Y / r2;
  const Hp mag = exp(u);
  const Hp c = cos(v), sn = sin(v);
  const double max = std::numeric_limits<double>::max();
  if (mag > Hp(max)) {
    s.saturated = true;
    const double inf = std::numeric_limits<double>::infinity();
    s.abs = inf;
    s.re = c == 0 ? 0.0 : (c > 0 ? inf : -inf);
    s.im = sn == 0 ? 0.0 : (sn > 0 ? inf : -inf);
    return s;
  }
  s.abs = static_cast<double>(mag);
  s.re = static_cast<double>(mag * c);
  s.im = static_cast<double>(mag * sn);
  return s;
}

InflectionRoots inflection_roots(double c) {
  if (c == 0) throw std::domain_error("inflection roots need c != 0");
  InflectionRoots r;
  r.c = c;
  const double b = c * c + c, c4 = c * c * c * c;
  const double disc = b * b + 3 * c4;
  const double sq = std::sqrt(disc);
  // stable root of 3t^2 + 2bt - c^4 = 0; the product of the roots is negative
  r.t = b > 0 ? c4 / (b + sq) : (-b + sq) / 3;
  const double y = std::sqrt(r.t);
  r.roots = {-y, y};
  r.boundary = r.t <= std::numeric_limits<double>::min() || disc <= 4 * std::numeric_limits<double>::epsilon() * b * b;
  // bisection cross-check on F2(c, .) over (0, bound]
  const double bound = 1 + std::max(std::abs(2 * b / 3), std::sqrt(c4 / 3));
  const double yb = bisect_positive_root(c, bound);
  r.bisection_gap = std::abs(yb - y) / y;
  return r;
}

WidthMeasurement right_width(double c) {
  if (c <= 0) throw std::domain_error("R_c needs c > 0");
  WidthMeasurement w;
  w.c = c;
  const auto r = inflection_roots(c);
  w.measured = r.roots[1] - r.roots[0];
  w.predicted = 2 * std::sqrt(0.5) * std::pow(c, 1.5);
  w.rel_error = std::abs(w.measured / w.predicted - 1);
  return w;
}

WidthMeasurement left_width(double c) {
  if (c <= 0) throw std::domain_error("L_{-c} needs c > 0");
  WidthMeasurement w;
  w.c = c;
  const auto r = inflection_roots(-c);
  w.measured = r.roots[1] - r.roots[0];
  w.predicted = 2 * std::sqrt(2.0 / 3.0) * std::sqrt(c);
  w.rel_error = std::abs(w.measured / w.predicted - 1);
  return w;
}

WidthRatio width_ratio(double c) {
  WidthRatio r;
  r.c = c;
  r.ratio = right_width(c).measured / left_width(c).measured;
  r.predicted = std::sqrt(0.75) * c;
  r.rel_error = std::abs(r.ratio / r.predicted - 1);
  return r;
}

PowerLawFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("power-law fit needs matching samples");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k] <= 0 || ys[k] <= 0) throw std::invalid_argument("power-law fit needs positive samples");
    const double lx = std::log(xs[k]), ly = std::log(ys[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  PowerLawFit f;
  const double vx = sxx - sx * sx / n, vy = syy - sy * sy / n, cxy = sxy - sx * sy / n;
  f.exponent = cxy / vx;
  f.prefactor = std::exp((sy - f.exponent * sx) / n);
  f.r_squared = vy == 0 ? 1 : cxy * cxy / (vx * vy);
  return f;
}

std::vector<double> log_space(double lo, double hi, int n) {
  if (n < 2 || lo <= 0 || hi <= lo) throw std::invalid_argument("log_space needs 0 < lo < hi and n >= 2");
  std::vector<double> out;
  const double a = std::log10(lo), b = std::log10(hi);
  for (int k = 0; k < n; ++k) out.push_back(std::pow(10.0, a + (b - a) * k / (n - 1)));
  return out;
}

std::string width_sweep_csv(const std::vector<double>& cs) {
  std::ostringstream os;
  os.precision(17);
  os << "c,R_measured,R_predicted,L_measured,L_predicted,ratio,rel_error\n";
  for (double c : cs) {
    const auto R = right_width(c);
    const auto L = left_width(c);
    const auto q = width_ratio(c);
    os << c << ',' << R.measured << ',' << R.predicted << ',' << L.measured << ',' << L.predicted << ',' << q.ratio
       << ',' << q.rel_error << '\n';
  }
  return os.str();
}

}  // namespace expcurve
