#include "expcurve/derivative.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace expcurve {

Poly prefactor_step(const Poly& f, int k, Var v) {
  static const Poly x = Poly::x(), y = Poly::y();
  static const Poly rho = modulus_squared();
  static const Poly rho2 = rho * rho;
  const Poly& w = v == Var::x ? x : y;
  // dS/dx = (y^2-x^2)/rho^2, dS/dy = -2xy/rho^2
  const Poly dS = v == Var::x ? y * y - x * x : Poly(Rational(-2)) * x * y;
  return f.derivative(v) * rho2 - Rational(4 * k) * (w * f * rho) + dS * f;
}

namespace {

PrefactorRecord run(int a, int b, bool y_first) {
  if (a < 0 || b < 0) throw std::invalid_argument("negative derivative order");
  Poly f(Rational(1));
  int k = 0;
  auto steps = [&](int n, Var v) {
    for (int s = 0; s < n; ++s) f = prefactor_step(f, k++, v);
  };
  if (y_first) {
    steps(b, Var::y);
    steps(a, Var::x);
  } else {
    steps(a, Var::x);
    steps(b, Var::y);
  }
  return {a, b, f, f.degree()};
}

}  // namespace

PrefactorRecord y_prefactor(int n) { return run(0, n, true); }
PrefactorRecord mixed_prefactor(int a, int b) { return run(a, b, true); }
PrefactorRecord mixed_prefactor_x_first(int a, int b) { return run(a, b, false); }

int expected_curve_degree(int a, int b) { return 3 * (a + b) - 1 - (b % 2) - (a == 0 ? 1 : 0); }

CurveRecord curve_polynomial(int a, int b) {
  if (a < 0 || b < 0 || a + b < 2) throw std::invalid_argument("no curve");
  Poly p = mixed_prefactor(a, b).prefactor;
  if (b % 2) {
    if (p.order(Var::y) != 1) throw std::runtime_error("reducible prefactor");
    p = p.divided_by_power(Var::y, 1);
  }
  if (a == 0) {
    if (p.order(Var::x) != 1) throw std::runtime_error("reducible prefactor");
    p = p.divided_by_power(Var::x, 1);
  }
  if (p.order(Var::x) > 0 || p.order(Var::y) > 0 || divide(p, modulus_squared()))
    throw std::runtime_error("reducible prefactor");
  CurveRecord rec;
  rec.a = a;
  rec.b = b;
  rec.F = content_primitive(p).second;
  rec.degree = rec.F.degree();
  if (rec.degree != expected_curve_degree(a, b)) throw std::logic_error("curve degree law violated");
  return rec;
}

Poly satellite_curve(const RationalFunction& g) {
  Poly p = g.num();
  if (p.is_zero()) throw std::invalid_argument("zero satellite prefactor");
  p = p.divided_by_power(Var::x, p.order(Var::x));
  p = p.divided_by_power(Var::y, p.order(Var::y));
  while (auto q = divide(p, modulus_squared())) p = *q;
  return content_primitive(p).second;
}

IrreducibilityCheck irreducibility_heuristic(const Poly& F, unsigned seed) {
  IrreducibilityCheck out;
  std::ostringstream why;
  if (F.degree() < 1) {
    out.detail = "constant polynomial";
    return out;
  }
  if (!gcd(F, F.derivative(Var::x)).is_constant() && F.degree(Var::x) > 0) why << "repeated factor (d/dx); ";
  if (!gcd(F, F.derivative(Var::y)).is_constant() && F.degree(Var::y) > 0) why << "repeated factor (d/dy); ";
  if (F.order(Var::x) > 0) why << "divisible by x; ";
  if (F.order(Var::y) > 0) why << "divisible by y; ";
  if (divide(F, modulus_squared())) why << "divisible by x^2+y^2; ";
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 9);
  int tried = 0;
  while (tried < 2) {
    Rational y0 = make_rational(num(rng), den(rng));
    UPoly<Rational> u = F.specialize(Var::y, y0);
    if (u.degree() != F.degree(Var::x)) continue;  // leading coefficient vanished, redraw
    ++tried;
    if (!is_squarefree(u)) why << "specialization y=" << y0.get_str() << " not squarefree; ";
  }
  out.detail = why.str();
  out.passed = out.detail.empty();
  if (out.passed) out.detail = "squarefree, no forced factors, squarefree specializations (heuristic)";
  return out;
}

std::vector<RationalFunction> satellite_prefactor(const SatelliteSpec& spec) {
  if (spec.order < 1) throw std::invalid_argument("satellite order must be positive");
  const RationalFunction dS = spec.S.derivative(spec.derivation);
  std::vector<RationalFunction> g{spec.g};
  while (static_cast<int>(g.size()) < spec.order) {
    const RationalFunction& last = g.back();
    g.push_back(last.derivative(spec.derivation) + last * dS);
  }
  return g;
}

std::string curve_record_to_json(const CurveRecord& rec) {
  nlohmann::json j;
  j["a"] = rec.a;
  j["b"] = rec.b;
  j["degree"] = rec.degree;
  j["F"] = nlohmann::json::parse(to_json(rec.F));
  j["genus_formula"] = rec.genus_formula ? nlohmann::json(*rec.genus_formula) : nlohmann::json();
  j["genus_computed"] = rec.genus_computed ? nlohmann::json(*rec.genus_computed) : nlohmann::json();
  return j.dump();
}

CurveRecord curve_record_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  CurveRecord rec;
  rec.a = j.at("a").get<int>();
  rec.b = j.at("b").get<int>();
  rec.degree = j.at("degree").get<int>();
  rec.F = poly_from_json(j.at("F").dump());
  if (j.contains("genus_formula") && !j["genus_formula"].is_null()) rec.genus_formula = j["genus_formula"].get<long>();
  if (j.contains("genus_computed") && !j["genus_computed"].is_null())
    rec.genus_computed = j["genus_computed"].get<long>();
  if (rec.F.degree() != rec.degree) throw std::invalid_argument("cached curve record has inconsistent degree");
  return rec;
}

std::filesystem::path AtlasCache::path_for(int a, int b) const {
  return dir_ / ("curve_a" + std::to_string(a) + "_b" + std::to_string(b) + ".json");
}

std::optional<CurveRecord> AtlasCache::load(int a, int b) const {
  std::ifstream in(path_for(a, b));
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    CurveRecord rec = curve_record_from_json(ss.str());
    if (rec.a != a || rec.b != b) return std::nullopt;
    return rec;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void AtlasCache::store(const CurveRecord& rec) const {
  std::filesystem::create_directories(dir_);
  const auto target = path_for(rec.a, rec.b);
  std::random_device rd;
  auto tmp = target;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out << curve_record_to_json(rec) << '\n';
    if (!out.flush()) throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

CurveRecord AtlasCache::get_or_compute(int a, int b) const {
  if (auto rec = load(a, b)) return *rec;
  CurveRecord rec = curve_polynomial(a, b);
  store(rec);
  return rec;
}

}  // namespace expcurve
