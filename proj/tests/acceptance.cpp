#include <boost/multiprecision/mpfr.hpp>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>
#include <thread>

#include "expcurve/analytic.hpp"
#include "expcurve/arith/factor.hpp"
#include "expcurve/birational.hpp"
#include "expcurve/derivative.hpp"
#include "expcurve/elliptic.hpp"
#include "expcurve/plotting.hpp"
#include "expcurve/scoreboard.hpp"
#include "expcurve/singularities.hpp"

using namespace expcurve;
using Big = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<120>>;

namespace {

struct Result {
  std::vector<std::string> failed;
  std::vector<std::string> known;  // failures recorded as deviations
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  }
  void known_deviation(bool ok, const std::string& what, const std::string& why) {
    if (!ok) known.push_back(what + " (" + why + ")");
  }
};

AffinePoint ap(const Rational& x, const Rational& y) { return {x, y}; }

Big big(const Rational& q) { return Big(q.get_num().get_str()) / Big(q.get_den().get_str()); }

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Big finite_difference(int a, int b, const Big& x, const Big& y) {
  const Big h("1e-14");
  Big sum = 0;
  for (int i = 0; i <= a; ++i)
    for (int j = 0; j <= b; ++j) {
      const Big u = x + (Big(a) / 2 - i) * h, v = y + (Big(b) / 2 - j) * h;
      sum += Big(binom(a, i) * binom(b, j) * (((i + j) % 2) ? -1 : 1)) * exp(u / (u * u + v * v));
    }
  return sum / pow(h, a + b);
}

void golden(Result& r) {
  r.require(curve_polynomial(0, 2).F == parse_poly("x^4-2*x^2*y^2-3*y^4-2*x*y^2"), "F_2 differs from the printed form");
  r.require(curve_polynomial(0, 3).F == parse_poly("6*(x^2-y^2)*(x^2+y^2)^2+3*x^5-6*x^3*y^2-9*x*y^4-2*x^2*y^2"),
            "F_3 differs from the printed form");
}

void degree_law(Result& r) {
  int n = 0;
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b) {
      if (a + b == 0) continue;
      const Poly p = mixed_prefactor(a, b).prefactor;
      ++n;
      const std::string at = " at (" + std::to_string(a) + "," + std::to_string(b) + ")";
      r.require(p.degree() == 3 * (a + b) - 1, "degree" + at);
      r.require((p.order(Var::y) > 0) == (b % 2 == 1), "y-divisibility" + at);
      r.require((p.order(Var::x) > 0) == (a == 0), "x-divisibility" + at);
    }
  r.detail = std::to_string(n) + " prefactors";
}

void numeric_property(Result& r) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-20, 20);
  double worst = 0;
  int n = 0;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      if (a + b == 0) continue;
      const Poly p = mixed_prefactor(a, b).prefactor;
      for (int t = 0; t < 5;) {
        const Rational x = make_rational(num(rng), 7), y = make_rational(num(rng), 9);
        if (abs(x) + abs(y) < Rational(1, 2)) continue;
        ++t;
        ++n;
        const Rational rho = x * x + y * y;
        const Big bx = big(x), by = big(y);
        const Big exact = big(p(x, y) / pow(rho, 2 * (a + b))) * exp(bx / (bx * bx + by * by));
        const double err = static_cast<double>(abs(finite_difference(a, b, bx, by) - exact) / (abs(exact) + Big("1e-30")));
        worst = std::max(worst, err);
      }
    }
  r.require(worst < 1e-6, "finite-difference mismatch");
  std::ostringstream d;
  d << n << " samples, worst relative error " << worst;
  r.detail = d.str();
}

void singularity_suite(Result& r) {
  const Poly F3 = curve_polynomial(0, 3).F;
  const auto o3 = delta_invariant(F3, ProjectivePoint::affine({}, {}));
  r.require(o3.delta == 7, "delta(C3, origin) = " + std::to_string(o3.delta));
  r.require(o3.smooth_branches == 2 && o3.cuspidal_branches == 1, "branch profile of C3 at the origin");
  r.require(o3.milnor == 2 * o3.delta - o3.branches + 1, "mu = 2 delta - r + 1 fails");
  r.known_deviation(o3.milnor == 13, "mu(C3, origin) = 13",
                    "computed mu = " + std::to_string(o3.milnor) + " = 2*7-3+1; 13 is an arithmetic slip");
  for (const auto& c : circle_point_check(F3))
    r.require(c.ordinary && c.multiplicity == 2 && c.delta == 1, "circle point " + c.point + " of C3");
  r.require(genus(F3).genus == 1, "genus(C3) != 1");
  const Poly F2 = curve_polynomial(0, 2).F;
  const auto o2 = delta_invariant(F2, ProjectivePoint::affine({}, {}));
  r.require(o2.milnor == 5 && o2.branches == 2, "C2 origin mu/r");
  r.require(genus(F2).genus == 0, "genus(C2) != 0");
  r.detail = "C3: delta=" + std::to_string(o3.delta) + " mu=" + std::to_string(o3.milnor) +
             " r=" + std::to_string(o3.branches) + "; C2: mu=" + std::to_string(o2.milnor) +
             " r=" + std::to_string(o2.branches);
}

void genus_table(Result& r) {
  int entries = 0;
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b)
      if (auto t = tabulated_genus(a, b)) {
        ++entries;
        r.require(genus_formula(a, b) == *t, "formula at (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
  std::vector<std::pair<int, int>> cells;
  for (int s = 2; s <= 5; ++s)
    for (int a = 0; a <= s; ++a) cells.emplace_back(a, s - a);
  std::vector<long> got(cells.size(), -1);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1u, std::thread::hardware_concurrency()); ++t)
    pool.emplace_back([&] {
      for (std::size_t k; (k = next++) < cells.size();) {
        try {
          got[k] = genus(curve_polynomial(cells[k].first, cells[k].second).F).genus;
        } catch (const std::exception&) {
        }
      }
    });
  for (auto& th : pool) th.join();
  for (std::size_t k = 0; k < cells.size(); ++k)
    r.require(got[k] == genus_formula(cells[k].first, cells[k].second),
              "pipeline genus at (" + std::to_string(cells[k].first) + "," + std::to_string(cells[k].second) + ")");
  r.detail = std::to_string(entries) + " table entries, " + std::to_string(cells.size()) + " pipeline curves";
}

void pipeline(Result& r) {
  const Poly F3 = curve_polynomial(0, 3).F;
  const Poly G3 = invert_curve(F3);
  r.require(G3 == parse_poly("-2*x^2*y^2+3*x^3-9*x*y^2+6*x^2-6*y^2"), "invert_curve(F3) != G3");
  r.require(invert_curve(G3) == F3, "involution");
  const auto rec = c3_pipeline();
  r.require(rec.weierstrass == std::array<Integer, 5>{0, 0, 0, -75, 74}, "final Weierstrass curve");
  r.require(rec.all_hold(), "identity failed");
  bool closing = false;
  for (const auto& id : rec.identities)
    if (id.name == "closing identity") closing = id.residual.is_zero();
  r.require(closing, "closing identity residual");
  r.detail = std::to_string(rec.identities.size()) + " identities";
}

void j_invariant(Result& r) {
  const auto d = slice_discriminant(slice_pencil(curve_polynomial(0, 3).F));
  const auto q = quartic_invariants(BinaryQuartic::from(d.quartic));
  r.require(q.I == 400 && q.J == -4736, "I, J");
  r.require(q.j == make_rational(62500, 33), "quartic j");
  r.require(parse_curve("[0,0,0,-75,74]").j == make_rational(62500, 33), "Weierstrass j");
  r.detail = "I=" + to_string(q.I) + " J=" + to_string(q.J) + " j=" + to_string(q.j);
}

void arithmetic(Result& r) {
  const auto E = parse_curve("[0,0,0,-75,74]");
  const auto T = parse_curve("[0,1,0,-8,0]");
  const auto c = conductor(E);
  std::vector<int> fs;
  for (const auto& l : c.local) fs.push_back(l.fp);
  r.require(c.N == 1584 && fs == std::vector<int>{4, 2, 1}, "conductor(E)");
  r.require(conductor(T).N == 264, "conductor(264.c1)");
  const auto t = torsion(E);
  r.require(t.structure == std::vector<int>{2} && t.generators.at(0) == CurvePoint::affine(Rational(1), Rational(0)),
            "torsion");
  const auto nt = non_torsion_certificate(E, CurvePoint::affine(Rational(-5), Rational(18)));
  r.require(nt.non_torsion && nt.n == 3 &&
                nt.witness == CurvePoint::affine(make_rational(19, 25), make_rational(-522, 125)),
            "non-torsion certificate");
  const auto d = twist_detect(E, T);
  r.require(d && *d == 3, "twist");
  r.require(factorize(E.disc) == std::vector<std::pair<Integer, int>>{{2, 10}, {3, 7}, {11, 1}}, "discriminant");
  r.detail = "N=" + to_string(c.N) + ", torsion " + t.description() + ", twist by 3";
}

void integral(Result& r) {
  const auto E = parse_curve("[0,0,0,-75,74]");
  const auto pts = integral_points(E, 1000000);
  for (const auto& [x, y] : std::vector<std::pair<long, long>>{
           {1, 0}, {-5, 18}, {-5, -18}, {10, 18}, {10, -18}, {13, 36}, {13, -36}, {-7, 16}, {-7, -16}, {301, 5220}, {301, -5220}})
    r.require(std::find(pts.begin(), pts.end(), CurvePoint::affine(Rational(x), Rational(y))) != pts.end(),
              "missing (" + std::to_string(x) + "," + std::to_string(y) + ")");
  r.require(pts.size() == 11, "count " + std::to_string(pts.size()) + " != 11");
  r.detail = std::to_string(pts.size()) + " points, exact match";
}

void transport(Result& r) {
  const auto p1 = transport_path(ap(1, 0), "E", "C3");
  r.require(p1.size() == 4 && p1[2].stage == "Q" && p1[2].point == ap(-2, 0) &&
                p1[3].point == ap(make_rational(-1, 2), 0),
            "E(1,0) path");
  const auto p2 = transport_path(ap(-5, 18), "E", "C3");
  r.require(p2.size() == 4 && p2[2].point == ap(-3, 3) &&
                p2[3].point == ap(make_rational(-1, 6), make_rational(-1, 6)),
            "E(-5,18) path");
  for (const auto& path : {p1, p2})
    for (const auto& s : path) {
      const Poly eq = pipeline_stage_equation(s.stage);
      r.require(is_zero(eq(s.point[0], s.point[1])), "off-curve at stage " + s.stage);
    }
  r.require(is_zero(curve_polynomial(0, 3).F(make_rational(-1, 6), make_rational(1, 6))), "mirror point");
  r.detail = "(-1/2,0) and (-1/6,-1/6); mirror (-1/6,1/6) also on C3";
}

void widths(Result& r) {
  const auto R = right_width(1e-4), L = left_width(1e-4);
  r.require(R.rel_error < 1e-3, "R_c");
  r.require(L.rel_error < 1e-3, "L_{-c}");
  for (double c : {1e-3, 1e-4, 1e-5}) r.require(width_ratio(c).rel_error < 5e-3, "ratio/c at c=" + std::to_string(c));
  const auto cs = log_space(1e-5, 1e-3, 21);
  std::vector<double> Rs, Ls;
  for (double c : cs) {
    Rs.push_back(right_width(c).measured);
    Ls.push_back(left_width(c).measured);
  }
  const double er = fit_power_law(cs, Rs).exponent, el = fit_power_law(cs, Ls).exponent;
  r.require(std::abs(er - 1.5) < 0.01 && std::abs(el - 0.5) < 0.01, "power-law exponents");
  std::ostringstream d;
  d << "rel errors " << R.rel_error << ", " << L.rel_error << "; exponents " << er << ", " << el;
  r.detail = d.str();
}

void c2_param(Result& r) {
  const auto c = parametrize_c2();
  r.require(c.identity_holds, "F_2(x(m), m x(m)) != 0");
  r.require(substitute(curve_polynomial(0, 2).F, c.x, c.y).is_zero(), "independent substitution");
  r.detail = "x(m) = " + to_string(c.x, {"m", "n"});
}

void plot(Result& r) {
  const Window w = default_window(0, 3);
  const int res = 256;
  const SvgStyle style;
  const std::string svg = emit_svg(trace_real_locus({curve_polynomial(0, 3).F, w, res}), w, style);
  r.require(svg == emit_svg(trace_real_locus({curve_polynomial(0, 3).F, w, res, 4, 3}), w, style), "byte determinism");
  // read the locus back from the SVG paths
  std::vector<std::vector<PlotPoint>> paths;
  const std::regex path("d=\"([^\"]*)\""), pt("[ML](-?[0-9.]+) (-?[0-9.]+)");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), path); it != std::sregex_iterator(); ++it) {
    const std::string d = (*it)[1];
    std::vector<PlotPoint> line;
    for (auto p = std::sregex_iterator(d.begin(), d.end(), pt); p != std::sregex_iterator(); ++p)
      line.push_back({w.xmin + std::stod((*p)[1]) / style.width * (w.xmax - w.xmin),
                      w.ymax - std::stod((*p)[2]) / style.height * (w.ymax - w.ymin)});
    paths.push_back(line);
  }
  const double cell = (w.xmax - w.xmin) / res;
  const auto nearest = [&](double x, double y) {
    double best = INFINITY;
    for (const auto& l : paths)
      for (const auto& p : l) best = std::min(best, std::hypot(p[0] - x, p[1] - y));
    return best;
  };
  r.require(!paths.empty(), "no paths");
  r.require(nearest(-0.5, 0) < 1e-2, "does not pass near (-1/2,0)");
  double asym = 0;
  int cusp = 0;
  for (const auto& l : paths) {
    bool left = false, right = false;
    for (const auto& p : l) {
      asym = std::max(asym, nearest(p[0], -p[1]));
      left = left || p[0] < -cell;
      right = right || p[0] > cell;
    }
    r.require(!(left && right), "a branch crosses x = 0 away from the origin");
    if (right) {
      ++cusp;
      for (const auto& p : l)
        if (std::hypot(p[0], p[1]) < 0.1) r.require(std::abs(p[1]) <= std::abs(p[0]) + cell, "x > 0 part is not the cusp");
    }
  }
  r.require(asym < cell, "not y-symmetric");
  r.detail = std::to_string(paths.size()) + " paths, " + std::to_string(cusp) + " cuspidal legs in x > 0, " +
             std::to_string(svg.size()) + " bytes";
}

void satellite(Result& r) {
  SatelliteSpec s;
  s.S = parse_rational_function("x/(x^2+y^2)");
  s.order = 6;
  const auto g = satellite_prefactor(s);
  for (int n = 1; n < 6; ++n)
    r.require(g[n] == RationalFunction(y_prefactor(n).prefactor, modulus_squared().pow(2 * n)),
              "f_" + std::to_string(n));
  SatelliteSpec q;
  q.S = parse_rational_function("(x^2-y^2)/(x^2+y^2)^2");
  q.order = 4;
  const Poly C = satellite_curve(satellite_prefactor(q)[3]);
  const long gq = genus(C).genus;
  r.detail = "e^{1/z^2} third y-derivative: degree " + std::to_string(C.degree()) + ", genus " + std::to_string(gq) +
             " (exploratory)";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double budget;
    std::function<void(Result&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Golden polynomials F_2, F_3", 1, golden},
      {2, "Degree law and divisibility pattern, a,b <= 5", 10, degree_law},
      {3, "Numeric defining property (finite differences)", 60, numeric_property},
      {4, "Singularity suite for C_2 and C_3", 30, singularity_suite},
      {5, "Genus table and pipeline genus for a+b <= 5", 600, genus_table},
      {6, "Pipeline identities C_3 -> Q -> W -> E", 5, pipeline},
      {7, "j-invariant by two routes", 5, j_invariant},
      {8, "Arithmetic facts of E", 10, arithmetic},
      {9, "Integral points with bound 1e6", 60, integral},
      {10, "Point transport E -> Q -> C_3", 5, transport},
      {11, "Width asymptotics", 5, widths},
      {12, "C_2 parametrization identity", 5, c2_param},
      {13, "Plot regression for C_3", 30, plot},
      {14, "Satellite engine", 60, satellite},
  };
  int unexpected = 0, known = 0;
  for (const auto& c : criteria) {
    Result r;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(r);
    } catch (const std::exception& e) {
      r.failed.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget) r.failed.push_back("runtime " + std::to_string(secs) + " s over budget");
    const bool pass = r.failed.empty() && r.known.empty();
    std::string line = (pass ? "PASS " : "FAIL ") + std::to_string(c.id) + ". " + c.name;
    char t[32];
    std::snprintf(t, sizeof t, " [%.2f s]", secs);
    line += t;
    if (!r.detail.empty()) line += ": " + r.detail;
    for (const auto& f : r.failed) line += " | failed: " + f;
    for (const auto& k : r.known) line += " | known deviation: " + k;
    std::cout << line << std::endl;
    if (!r.failed.empty()) ++unexpected;
    else if (!r.known.empty()) ++known;
  }
  std::cout << criteria.size() - unexpected - known << " pass, " << known << " fail as recorded deviations, " << unexpected
            << " unexpected failures" << std::endl;
  return unexpected == 0 ? 0 : 1;
}
