#include "expcurve/birational.hpp"

#include <algorithm>
#include <map>

#include "expcurve/derivative.hpp"
#include "expcurve/errors.hpp"
#include "json.hpp"

namespace expcurve {

AffinePoint RationalMap::operator()(const AffinePoint& p) const {
  for (const auto* f : {&sx, &sy})
    if (is_zero(f->den()(p[0], p[1])))
      throw std::domain_error("base point: denominator " + to_string(f->den(), vars) + " vanishes at (" +
                              p[0].get_str() + "," + p[1].get_str() + ")");
  return {sx(p[0], p[1]), sy(p[0], p[1])};
}

RationalMap RationalMap::compose(const RationalMap& inner) const {
  return {substitute(sx, inner.sx, inner.sy), substitute(sy, inner.sx, inner.sy), inner.vars};
}

std::array<std::string, 2> RationalMap::components() const { return {to_string(sx, vars), to_string(sy, vars)}; }

RationalMap inversion_map() {
  const Poly rho = modulus_squared();
  return {RationalFunction(Poly::x(), rho), RationalFunction(-Poly::y(), rho)};
}

Poly invert_curve(const Poly& F) {
  if (F.is_zero()) throw std::invalid_argument("zero polynomial");
  const Poly rho = modulus_squared();
  if (divide(F, rho)) throw std::invalid_argument("x^2+y^2 divides the polynomial");
  const int d = F.degree();
  std::vector<Poly> rho_pow{Poly(Rational(1))};
  for (int k = 1; k <= d; ++k) rho_pow.push_back(rho_pow.back() * rho);
  Poly N;
  for (const auto& [m, c] : F.terms()) {
    const Rational sc = m.j % 2 ? Rational(-c) : c;
    N += Poly::monomial(sc, m.i, m.j) * rho_pow[d - m.i - m.j];
  }
  while (auto q = divide(N, rho)) N = *q;
  return content_primitive(N).second;
}

PencilSlice slice_pencil(const Poly& F) {
  if (F.is_zero()) throw std::invalid_argument("zero polynomial");
  if (!is_zero(F.constant_term())) throw std::invalid_argument("origin is not on the curve");
  std::map<int, std::vector<Rational>> by_power;
  for (const auto& [m, c] : F.terms()) {
    auto& v = by_power[m.i + m.j];
    if (static_cast<int>(v.size()) <= m.j) v.resize(m.j + 1);
    v[m.j] += c;
  }
  PencilSlice s;
  s.k = by_power.begin()->first;
  const int top = by_power.rbegin()->first;
  s.coeffs.assign(top - s.k + 1, UPoly<Rational>());
  for (auto& [p, v] : by_power) s.coeffs[p - s.k] = UPoly<Rational>(v);
  s.sign = sgn(s.coeffs.back().leading()) < 0 ? -1 : 1;
  if (s.sign < 0)
    for (auto& c : s.coeffs) c = -c;
  return s;
}

SliceDiscriminant slice_discriminant(const PencilSlice& s) {
  if (s.degree() != 2) throw std::invalid_argument("slice is not quadratic in x");
  SliceDiscriminant out;
  const auto& C = s.coeffs[0];
  const auto& B = s.coeffs[1];
  const auto& A = s.coeffs[2];
  out.D = B * B - UPoly<Rational>(Rational(4)) * A * C;
  if (out.D.is_zero()) {
    out.degenerate = true;
    out.content = 0;
    return out;
  }
  const UPoly<Rational> circle(std::vector<Rational>{Rational(1), Rational(0), Rational(1)});
  UPoly<Rational> rest = out.D;
  for (;;) {
    auto [q, r] = divmod(rest, circle);
    if (!r.is_zero()) break;
    rest = q;
    ++out.circle_power;
  }
  const UPoly<Integer> prim = primitive_integer(rest);
  std::vector<Rational> qc;
  for (const auto& c : prim.coeffs()) qc.emplace_back(c);
  out.quartic = UPoly<Rational>(qc);
  if (sgn(out.quartic.leading()) < 0) out.quartic = -out.quartic;
  out.content = rest.leading() / out.quartic.leading();
  return out;
}

BinaryQuartic BinaryQuartic::from(const UPoly<Rational>& q) {
  if (q.degree() > 4) throw std::invalid_argument("degree exceeds 4");
  return {q.coeff(4), q.coeff(3), q.coeff(2), q.coeff(1), q.coeff(0)};
}

QuarticInvariants quartic_invariants(const BinaryQuartic& q) {
  QuarticInvariants r;
  r.I = 12 * q.a * q.e - 3 * q.b * q.d + q.c * q.c;
  r.J = 72 * q.a * q.c * q.e + 9 * q.b * q.c * q.d - 27 * q.a * q.d * q.d - 27 * q.e * q.b * q.b - 2 * q.c * q.c * q.c;
  r.A = -27 * r.I;
  r.B = -27 * r.J;
  const Rational A3 = 4 * r.A * r.A * r.A;
  const Rational den = A3 + 27 * r.B * r.B;
  if (is_zero(den)) throw std::domain_error("singular quartic");
  r.j = 1728 * A3 / den;
  return r;
}

bool PipelineRecord::all_hold() const {
  return std::all_of(identities.begin(), identities.end(), [](const auto& i) { return i.holds; });
}

namespace {

const char* kG3 = "-2*x^2*y^2+3*x^3-9*x*y^2+6*x^2-6*y^2";
const char* kCubic = "6*x^3+39*x^2+72*x+36";

Poly stage_poly(const std::string& name) {
  if (name == "C3") return curve_polynomial(0, 3).F;
  if (name == "Q") return parse_poly(kG3);
  if (name == "W") return parse_poly(kCubic) - Poly::y() * Poly::y();
  if (name == "E") return parse_poly("x^3-75*x+74-y^2");
  throw std::invalid_argument("unknown stage '" + name + "' (C3, Q, W, E)");
}

std::array<std::string, 2> stage_vars(const std::string& name) {
  if (name == "E") return {"u", "v"};
  return {"x", "y"};
}

RationalMap step_map(const std::string& from, const std::string& to) {
  auto rf = [](const char* s) { return parse_rational_function(s); };
  if ((from == "C3" && to == "Q") || (from == "Q" && to == "C3")) return inversion_map();
  if (from == "Q" && to == "W") return {rf("x"), rf("y*(2*x^2+9*x+6)/x")};
  if (from == "W" && to == "Q") return {rf("x"), rf("x*y/(2*x^2+9*x+6)")};
  if (from == "W" && to == "E") return {rf("6*x+13"), rf("6*y")};
  if (from == "E" && to == "W") return {rf("(x-13)/6"), rf("y/6"), {"u", "v"}};
  throw std::invalid_argument("no direct map " + from + " -> " + to);
}

PipelineIdentity identity(std::string name, std::string statement, const RationalFunction& lhs,
                          const RationalFunction& rhs) {
  PipelineIdentity id;
  id.name = std::move(name);
  id.statement = std::move(statement);
  id.residual = (lhs - rhs).num();
  id.holds = id.residual.is_zero();
  if (!id.holds)
    throw InconsistencyError("identity '" + id.name + "' fails, residual " + to_string(id.residual));
  return id;
}

}  // namespace

const std::vector<std::string>& pipeline_stage_names() {
  static const std::vector<std::string> names{"C3", "Q", "W", "E"};
  return names;
}

Poly pipeline_stage_equation(const std::string& stage) { return stage_poly(stage); }

PipelineRecord c3_pipeline() {
  PipelineRecord rec;
  const Poly F3 = stage_poly("C3");
  const Poly G3 = stage_poly("Q");
  const Poly rho = modulus_squared();
  auto rf = [](const char* s) { return parse_rational_function(s); };
  const std::array<std::string, 2> uv{"u", "v"};

  rec.identities.push_back(identity("inversion", "invert_curve(F3) = G3", RationalFunction(invert_curve(F3)),
                                    RationalFunction(G3)));
  rec.identities.push_back(identity("involution", "invert_curve(G3) = F3", RationalFunction(invert_curve(G3)),
                                    RationalFunction(F3)));
  const RationalMap inv = inversion_map();
  rec.identities.push_back(identity("inverse substitution", "G3(x/(x^2+y^2), -y/(x^2+y^2)) = F3/(x^2+y^2)^4",
                                    substitute(G3, inv.sx, inv.sy), RationalFunction(F3, rho.pow(4))));
  rec.identities.push_back(identity("solved form", "G3 = 3x^2(x+2) - y^2(2x^2+9x+6)", RationalFunction(G3),
                                    rf("3*x^2*(x+2)-y^2*(2*x^2+9*x+6)")));
  const RationalMap to_q = step_map("W", "Q");
  rec.identities.push_back(identity("y' substitution", "G3(x, x y/(2x^2+9x+6)) = x^2 (6x^3+39x^2+72x+36 - y^2)/(2x^2+9x+6)",
                                    substitute(G3, to_q.sx, to_q.sy),
                                    rf("x^2*(6*x^3+39*x^2+72*x+36-y^2)/(2*x^2+9*x+6)")));
  rec.identities.push_back(identity("cubic", "3(x+2)(2x^2+9x+6) = 6x^3+39x^2+72x+36", rf("3*(x+2)*(2*x^2+9*x+6)"),
                                    rf(kCubic)));
  const RationalMap to_w = step_map("E", "W");
  rec.identities.push_back(identity("Weierstrass scaling", "W((u-13)/6, v/6) = (u^3-75u+74-v^2)/36",
                                    substitute(stage_poly("W"), to_w.sx, to_w.sy),
                                    RationalFunction(stage_poly("E"), Poly(Rational(36)))));
  rec.identities.push_back(identity(
      "closing identity", "G3((u-13)/6, (v/2)(u-13)/(u^2+u-74)) = (u-13)^2(u^3-75u+74-v^2)/(72(u^2+u-74))",
      substitute(G3, parse_rational_function("(u-13)/6", uv), parse_rational_function("(v/2)*(u-13)/(u^2+u-74)", uv)),
      parse_rational_function("(u-13)^2*(u^3-75*u+74-v^2)/(72*(u^2+u-74))", uv)));

  // E is y^2 = x^3 + a4 x + a6 read off the final stage
  const Poly Ep = stage_poly("E");
  const WeierstrassCurve E = WeierstrassCurve::short_form(Ep.coeff(1, 0).get_num(), Ep.coeff(0, 0).get_num());
  if (!is_minimal(E)) throw InconsistencyError("final Weierstrass model is not minimal");
  rec.weierstrass = E.coefficients();

  const auto& names = pipeline_stage_names();
  for (std::size_t k = 0; k < names.size(); ++k) {
    PipelineStage st{names[k], stage_poly(names[k]), stage_vars(names[k]), {"", ""}};
    if (k + 1 < names.size()) {
      RationalMap m = step_map(names[k], names[k + 1]);
      m.vars = st.vars;
      st.map_to_next = m.components();
    }
    rec.stages.push_back(st);
  }
  return rec;
}

std::string pipeline_to_json(const PipelineRecord& r) {
  nlohmann::json j;
  auto& stages = j["stages"] = nlohmann::json::array();
  for (const auto& s : r.stages) {
    nlohmann::json sj;
    sj["name"] = s.name;
    sj["equation"] = to_string(s.equation, s.vars);
    sj["vars"] = {s.vars[0], s.vars[1]};
    if (!s.map_to_next[0].empty()) sj["map_to_next"] = {s.map_to_next[0], s.map_to_next[1]};
    stages.push_back(sj);
  }
  auto& w = j["weierstrass"] = nlohmann::json::array();
  for (const auto& a : r.weierstrass) w.push_back(a.get_si());
  const WeierstrassCurve E =
      WeierstrassCurve::make(r.weierstrass[0], r.weierstrass[1], r.weierstrass[2], r.weierstrass[3], r.weierstrass[4]);
  j["j"] = E.j.get_str();
  auto& ids = j["identities"] = nlohmann::json::array();
  for (const auto& i : r.identities)
    ids.push_back({{"name", i.name}, {"statement", i.statement}, {"holds", i.holds}, {"residual", to_string(i.residual)}});
  j["all_hold"] = r.all_hold();
  return j.dump();
}

std::vector<TransportStep> transport_path(const AffinePoint& p, const std::string& from, const std::string& to) {
  const auto& names = pipeline_stage_names();
  auto index = [&](const std::string& s) {
    auto it = std::find(names.begin(), names.end(), s);
    if (it == names.end()) throw std::invalid_argument("unknown stage '" + s + "' (C3, Q, W, E)");
    return static_cast<int>(it - names.begin());
  };
  int i = index(from);
  const int target = index(to);
  if (!is_zero(stage_poly(from)(p[0], p[1])))
    throw std::invalid_argument("point (" + p[0].get_str() + "," + p[1].get_str() + ") is not on " + from);
  std::vector<TransportStep> path{{from, p}};
  while (i != target) {
    const int next = i < target ? i + 1 : i - 1;
    const AffinePoint q = step_map(names[i], names[next])(path.back().point);
    if (!is_zero(stage_poly(names[next])(q[0], q[1])))
      throw InconsistencyError("transported point left the curve at stage " + names[next]);
    path.push_back({names[next], q});
    i = next;
  }
  return path;
}

AffinePoint transport_point(const AffinePoint& p, const std::string& from, const std::string& to) {
  return transport_path(p, from, to).back().point;
}

C2Parametrization parametrize_c2() {
  const Poly F2 = curve_polynomial(0, 2).F;
  const PencilSlice s = slice_pencil(F2);
  if (s.degree() != 1) throw InconsistencyError("C2 slice is not linear in x");
  C2Parametrization out;
  const Poly c0 = Poly::from_upoly(s.coeffs[0], Var::x), c1 = Poly::from_upoly(s.coeffs[1], Var::x);
  out.x = RationalFunction(-c0, c1);
  out.y = RationalFunction(Poly::x()) * out.x;
  out.identity_holds = substitute(F2, out.x, out.y).is_zero();
  out.matches_printed = out.x == parse_rational_function("2*m^2/((1+m^2)*(1-3*m^2))", {"m", "n"});
  return out;
}

}  // namespace expcurve
