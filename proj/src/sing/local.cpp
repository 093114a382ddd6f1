#include <random>

#include "expcurve/singularities.hpp"

namespace expcurve {

namespace {

bool all_real(const GaussPoly& p) {
  for (const auto& [m, c] : p.terms())
    if (!is_zero(c.im)) return false;
  return true;
}

Poly real_part(const GaussPoly& p) {
  return p.map_coeffs<Rational>([](const GaussianRational& c) { return c.re; });
}

/// Res_y as a polynomial in x; the integer route when the input is real.
GaussPoly resultant_y(const GaussPoly& p, const GaussPoly& q) {
  if (all_real(p) && all_real(q)) return to_gaussian(resultant(real_part(p), real_part(q), Var::y));
  const auto up = p.as_univariate(Var::y);
  const auto uq = q.as_univariate(Var::y);
  const UPoly<GaussianRational> r = resultant(up, uq);
  return GaussPoly::from_upoly(r, Var::x);
}

UPoly<GaussianRational> on_line_x0(const GaussPoly& p) { return p.specialize(Var::x, GaussianRational()); }

bool is_power_of_t(const UPoly<GaussianRational>& g) {
  for (int k = 0; k < g.degree(); ++k)
    if (!is_zero(g.coeff(k))) return false;
  return true;
}

}  // namespace

std::string to_string(const ProjectivePoint& p) {
  return "(" + to_string(p.X) + ":" + to_string(p.Y) + ":" + to_string(p.Z) + ")";
}

MilnorResult milnor_number(const GaussPoly& F, unsigned seed) {
  if (!is_zero(F.constant_term())) throw std::invalid_argument("origin is not on the curve");
  const GaussPoly P = F.derivative(Var::x), Q = F.derivative(Var::y);
  if (P.is_zero() || Q.is_zero()) throw std::invalid_argument("non-isolated singularity");
  if (!is_zero(P.constant_term()) || !is_zero(Q.constant_term())) return {0, 0, seed, 0};
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> pick(1, 100);
  for (int attempt = 1; attempt <= 40; ++attempt) {
    const long k = pick(rng);
    const GaussPoly sx = GaussPoly::x() + GaussianRational(k) * GaussPoly::y();
    const GaussPoly Ps = P.compose(sx, GaussPoly::y());
    const GaussPoly Qs = Q.compose(sx, GaussPoly::y());
    // leading y-coefficients must be constants so that no intersection escapes to infinity
    if (is_zero(Ps.coeff(0, Ps.degree())) || is_zero(Qs.coeff(0, Qs.degree()))) continue;
    if (!is_power_of_t(gcd(on_line_x0(Ps), on_line_x0(Qs)))) continue;
    const GaussPoly R = resultant_y(Ps, Qs);
    if (R.is_zero()) throw std::invalid_argument("non-isolated singularity");
    return {R.order(Var::x), k, seed, attempt};
  }
  throw CertificationError("no admissible shear found for the Milnor number");
}

MilnorResult milnor_number(const Poly& F, unsigned seed) { return milnor_number(to_gaussian(F), seed); }

GaussPoly local_equation(const Poly& F, const ProjectivePoint& P) {
  const GaussPoly G = to_gaussian(F);
  if (!P.at_infinity()) return G.translated(P.X / P.Z, P.Y / P.Z);
  const int d = F.degree();
  GaussPoly h;
  if (!is_zero(P.Y)) {
    // chart Y = 1, coordinates (X, Z)
    for (const auto& [m, c] : G.terms()) h.add_term({m.i, d - m.i - m.j}, c);
    return h.translated(P.X / P.Y, GaussianRational());
  }
  // chart X = 1, coordinates (Y, Z)
  for (const auto& [m, c] : G.terms()) h.add_term({m.j, d - m.i - m.j}, c);
  return h.translated(P.Y / P.X, GaussianRational());
}

namespace {

/// Homogeneous binary form with k distinct linear factors (over C).
bool squarefree_binary_form(const GaussPoly& form) {
  const int k = form.degree();
  std::vector<GaussianRational> c(static_cast<std::size_t>(k) + 1);
  for (const auto& [m, v] : form.terms()) c[m.i] = v;
  const UPoly<GaussianRational> t(c);
  const int at_infinity = k - t.degree();
  return at_infinity <= 1 && is_squarefree(t);
}

SingularityReport smooth_report(const std::string& label, int mult) {
  SingularityReport r;
  r.point = label;
  r.multiplicity = mult;
  r.branches = 1;
  r.smooth_branches = 1;
  r.ordinary = true;
  r.method = "smooth";
  return r;
}

}  // namespace

SingularityReport delta_invariant(const GaussPoly& local, const std::string& label, unsigned seed) {
  if (!is_zero(local.constant_term())) throw std::invalid_argument("point is not on the curve");
  const int mult = local.order();
  if (mult <= 1) return smooth_report(label, mult);
  const PuiseuxResult pr = newton_puiseux(local);
  const MilnorResult mr = milnor_number(local, seed);
  SingularityReport r;
  r.point = label;
  r.multiplicity = mult;
  r.branches = static_cast<int>(pr.branches.size());
  for (const auto& b : pr.branches) (b.smooth() ? r.smooth_branches : r.cuspidal_branches)++;
  r.delta = pr.delta;
  r.milnor = mr.mu;
  r.seed = seed;
  r.branch_data = pr.branches;
  r.ordinary = squarefree_binary_form(local.lowest_form());
  r.method = pr.exact ? "puiseux(exact)+resultant" : "puiseux(" + std::to_string(pr.digits) + " digits)+resultant";
  if (pr.multiplicity != mult)
    throw InconsistencyError("multiplicity " + std::to_string(mult) + " but branches give " +
                             std::to_string(pr.multiplicity));
  if (mr.mu != 2 * r.delta - r.branches + 1)
    throw InconsistencyError("inconsistent: mu = " + std::to_string(mr.mu) + " but 2*delta - r + 1 = " +
                             std::to_string(2 * r.delta - r.branches + 1));
  if (r.ordinary && r.delta != static_cast<long>(mult) * (mult - 1) / 2)
    throw InconsistencyError("ordinary point with delta != k(k-1)/2");
  return r;
}

SingularityReport delta_invariant(const Poly& F, const ProjectivePoint& P, unsigned seed) {
  SingularityReport r = delta_invariant(local_equation(F, P), to_string(P), seed);
  r.where = P;
  if (!P.at_infinity() && is_zero(P.X) && is_zero(P.Y)) r.point = "origin";
  return r;
}

std::array<SingularityReport, 2> circle_point_check(const Poly& F, unsigned seed) {
  std::array<SingularityReport, 2> out;
  for (int s = 0; s < 2; ++s) {
    const GaussianRational i = s == 0 ? GaussianRational::i() : -GaussianRational::i();
    const ProjectivePoint P{i, GaussianRational(1), GaussianRational()};
    const std::string label = s == 0 ? "circle(+i)" : "circle(-i)";
    if (!is_zero(to_gaussian(F.leading_form())(i, GaussianRational(1)))) throw std::invalid_argument("not on curve");
    const GaussPoly local = local_equation(F, P);
    const int k = local.order();
    if (k <= 1) {
      out[s] = smooth_report(label, k);
    } else if (squarefree_binary_form(local.lowest_form())) {
      SingularityReport r;
      r.point = label;
      r.multiplicity = k;
      r.branches = k;
      r.smooth_branches = k;
      r.ordinary = true;
      r.delta = static_cast<long>(k) * (k - 1) / 2;
      r.milnor = static_cast<long>(k - 1) * (k - 1);
      r.method = "ordinary tangent cone";
      out[s] = r;
    } else {
      out[s] = delta_invariant(local, label, seed);
    }
    out[s].where = P;
  }
  return out;
}

}  // namespace expcurve
