#include <map>
#include <random>

#include "expcurve/arith/gaussian_roots.hpp"
#include "expcurve/singularities.hpp"
#include "json.hpp"

namespace expcurve {

namespace {

Poly univariate_gcd_x(const std::vector<Poly>& polys) {
  UPoly<Rational> g;
  for (const auto& p : polys)
    if (!p.is_zero()) g = gcd(g, p.to_upoly(Var::x));
  return Poly::from_upoly(g, Var::x);
}

bool is_x_power(const Poly& g) { return g.size() == 1 && g.terms().begin()->first.j == 0; }

std::string describe_factor(const UPoly<Rational>& f) {
  Poly p = Poly::from_upoly(f, Var::x);
  return "(t:1:0) with " + to_string(p, {"t", "s"}) + "=0";
}

bool is_circle_point(const ProjectivePoint& p) {
  return p.at_infinity() && !is_zero(p.Y) && is_zero(p.X.re) && (p.X.im == 1 || p.X.im == -1) && is_zero(p.Y.im) &&
         p.Y.re == 1;
}

}  // namespace

SingularLocus certify_singular_locus(const Poly& F) {
  if (F.degree() < 1) throw std::invalid_argument("constant polynomial");
  const Poly Fx = F.derivative(Var::x), Fy = F.derivative(Var::y);
  if (!gcd(gcd(F, Fx), Fy).is_constant()) throw std::invalid_argument("polynomial is not squarefree");
  SingularLocus out;
  std::vector<Poly> res;
  if (F.degree(Var::y) > 0) {
    if (!Fx.is_zero()) res.push_back(resultant(F, Fx, Var::y));
    if (!Fy.is_zero()) res.push_back(resultant(F, Fy, Var::y));
    if (!Fx.is_zero() && !Fy.is_zero() && (Fx.degree(Var::y) > 0 || Fy.degree(Var::y) > 0))
      res.push_back(resultant(Fx, Fy, Var::y));
  } else {
    res.push_back(F);
    res.push_back(Fx);
  }
  Poly G = univariate_gcd_x(res);
  if (G.is_zero()) throw CertificationError("certification failed: all resultants vanish");
  if (!G.is_constant() && !is_x_power(G)) {
    // retry with random combinations of the partials before giving up
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pick(1, 97);
    std::vector<Poly> extra{G};
    for (int t = 0; t < 2; ++t) {
      Poly comb = Fx + Rational(pick(rng)) * Fy;
      if (!comb.is_zero() && comb.degree(Var::y) >= 0) extra.push_back(resultant(F, comb, Var::y));
    }
    G = univariate_gcd_x(extra);
    if (!G.is_constant() && !is_x_power(G)) {
      const UPoly<Rational> u = G.to_upoly(Var::x);
      const int k = u.valuation();
      Poly witness = Poly::from_upoly(divmod(u, UPoly<Rational>::monomial(Rational(1), k)).first, Var::x);
      throw CertificationError("certification failed: singular x-coordinates outside x=0, witness factor " +
                               to_string(witness));
    }
  }
  out.certificate = G;
  // singular points on the line x = 0
  if (!G.is_constant()) {
    UPoly<Rational> g = F.specialize(Var::x, Rational(0));
    g = gcd(g, Fx.specialize(Var::x, Rational(0)));
    g = gcd(g, Fy.specialize(Var::x, Rational(0)));
    if (g.degree() > 0) {
      const auto roots = rational_roots(g);
      int found = 0;
      for (const auto& [y0, m] : roots) {
        out.affine.push_back(ProjectivePoint::affine(GaussianRational(), GaussianRational(y0)));
        ++found;
      }
      if (found != static_cast<int>(squarefree_part(g).degree()))
        throw UnsupportedError("singular point on x=0 with irrational coordinate");
    }
  }
  // points at infinity
  const Poly L = F.leading_form();
  const int d = F.degree();
  std::vector<Rational> lc(static_cast<std::size_t>(d) + 1);
  for (const auto& [m, c] : L.terms()) lc[m.i] = c;
  const UPoly<Rational> l(lc);
  const int s = d - l.degree();
  auto check_point = [&](const ProjectivePoint& P) {
    const GaussPoly local = local_equation(F, P);
    if (local.order() >= 2) {
      out.infinite.push_back(P);
      return true;
    }
    return false;
  };
  for (const auto& [f, m] : squarefree_decomposition(l)) {
    if (f.degree() < 1) continue;
    InfinityPoint ip{f, m, false, describe_factor(f)};
    if (m >= 2) {
      const auto roots = gaussian_roots(UPoly<GaussianRational>(std::vector<GaussianRational>(f.coeffs().begin(), f.coeffs().end())));
      if (!roots) throw UnsupportedError("multiple point at infinity outside Q(i): " + ip.description);
      for (const auto& [t0, mm] : *roots) ip.singular = check_point({t0, GaussianRational(1), GaussianRational()}) || ip.singular;
    }
    out.infinity_factors.push_back(ip);
  }
  if (s >= 1) {
    InfinityPoint ip{UPoly<Rational>(), s, false, "(1:0:0)"};
    if (s >= 2) ip.singular = check_point({GaussianRational(1), GaussianRational(), GaussianRational()});
    out.infinity_factors.push_back(ip);
  }
  return out;
}

GenusReport genus(const Poly& F, unsigned seed) {
  const SingularLocus locus = certify_singular_locus(F);
  GenusReport g;
  g.degree = F.degree();
  for (const auto& P : locus.affine) g.reports.push_back(delta_invariant(F, P, seed));
  bool circles_done = false;
  for (const auto& P : locus.infinite) {
    if (is_circle_point(P)) {
      if (circles_done) continue;
      for (auto& r : circle_point_check(F, seed)) g.reports.push_back(r);
      circles_done = true;
      continue;
    }
    g.reports.push_back(delta_invariant(F, P, seed));
  }
  long total = 0;
  for (const auto& r : g.reports) total += r.delta;
  const long d = g.degree;
  g.genus = (d - 1) * (d - 2) / 2 - total;
  if (g.genus < 0) throw CertificationError("reducibility detected: negative genus " + std::to_string(g.genus));
  return g;
}

Rational genus_formula_exact(int a, int b) {
  if (a < 0 || b < 0 || a + b < 2) throw std::invalid_argument("no curve");
  const Rational A(a), B(b);
  if (b % 2 == 0) {
    Rational c = a % 2 == 0 ? Rational(2) : (a % 4 == 1 ? Rational(9, 8) : Rational(13, 8));
    return Rational(9, 8) * A * A + 3 * A * B + Rational(3, 4) * B * B - Rational(13, 4) * A - Rational(5, 2) * B + c;
  }
  Rational c = a % 2 == 1 ? Rational(7, 4) : (a == 0 ? Rational(13, 4) : Rational(9, 4));
  return A * A + 3 * A * B + Rational(3, 4) * B * B - Rational(7, 2) * A - 3 * B + c;
}

long genus_formula(int a, int b) {
  const Rational g = genus_formula_exact(a, b);
  if (!is_integer(g)) throw InconsistencyError("genus formula is not integral at (" + std::to_string(a) + "," +
                                               std::to_string(b) + ")");
  return g.get_num().get_si();
}

std::optional<Rational> printed_mixed_genus(int a, int b) {
  if (a < 0 || b < 0 || a + b < 2) throw std::invalid_argument("no curve");
  if (b % 2 == 1) return genus_formula_exact(a, b);
  if (a % 2 == 1) return std::nullopt;
  const Rational A(a), B(b);
  return Rational(9, 8) * A * A + 3 * A * B + Rational(3, 4) * B * B - Rational(13, 4) * A - Rational(5, 2) * B + 2;
}

Rational pure_genus_formula(int n) {
  if (n < 2) throw std::invalid_argument("no curve");
  if (n % 2 == 0) return make_rational((n - 2) * (3 * n - 4), 4);
  return make_rational(3 * n * n - 12 * n + 13, 4);
}

Rational printed_pure_genus(int n) {
  if (n < 2) throw std::invalid_argument("no curve");
  if (n % 2 == 0) return make_rational((n - 2) * (3 * n - 4), 4);
  return make_rational(3 * n * n + 1, 4);
}

std::optional<long> tabulated_genus(int a, int b) {
  static const long table[6][6] = {{-1, -1, 0, 1, 4, 7},      {-1, 0, 3, 6, 13, 18},    {0, 3, 10, 15, 26, 33},
                                   {2, 7, 18, 25, 40, 49},    {7, 14, 29, 38, 57, 68}, {13, 22, 41, 52, 75, 88}};
  if (a < 0 || b < 0 || a > 5 || b > 5 || table[a][b] < 0) return std::nullopt;
  return table[a][b];
}

namespace {

nlohmann::json report_json(const SingularityReport& r) {
  nlohmann::json j;
  j["point"] = r.point;
  j["mult"] = r.multiplicity;
  j["r"] = r.branches;
  j["mu"] = r.milnor;
  j["delta"] = r.delta;
  j["ordinary"] = r.ordinary;
  j["smooth_branches"] = r.smooth_branches;
  j["cuspidal_branches"] = r.cuspidal_branches;
  j["method"] = r.method;
  if (!r.branch_data.empty()) {
    auto& arr = j["branches"] = nlohmann::json::array();
    for (const auto& b : r.branch_data) {
      nlohmann::json bj;
      bj["ramification"] = b.ramification_index;
      bj["multiplicity"] = b.multiplicity;
      bj["tangent"] = b.tangent;
      bj["terminates"] = b.terminates;
      auto& terms = bj["terms"] = nlohmann::json::array();
      for (const auto& t : b.terms) terms.push_back({t.exponent.get_str(), t.coefficient});
      arr.push_back(bj);
    }
  }
  return j;
}

}  // namespace

std::string singularity_report_to_json(const SingularityReport& r) { return report_json(r).dump(); }

std::string genus_report_to_json(const GenusReport& g, std::optional<int> a, std::optional<int> b) {
  nlohmann::json j;
  if (a) j["a"] = *a;
  if (b) j["b"] = *b;
  j["degree"] = g.degree;
  j["genus"] = g.genus;
  auto& arr = j["singularities"] = nlohmann::json::array();
  for (const auto& r : g.reports) arr.push_back(report_json(r));
  return j.dump();
}

}  // namespace expcurve
