#include "expcurve/arith/bipoly.hpp"

#include "json.hpp"

namespace expcurve {

namespace {

template <class C>
UPoly<C> content(const UPoly<UPoly<C>>& p) {
  UPoly<C> g;
  for (const auto& c : p.coeffs()) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

template <class C>
UPoly<UPoly<C>> primitive_part(const UPoly<UPoly<C>>& p) {
  UPoly<C> c = content(p);
  if (c.degree() <= 0) {
    // scale to a monic leading coefficient of the leading coefficient
    const C& l = p.leading().leading();
    std::vector<UPoly<C>> out;
    for (const auto& x : p.coeffs()) out.push_back(x.divided_by(l));
    return UPoly<UPoly<C>>(std::move(out));
  }
  std::vector<UPoly<C>> out;
  for (const auto& x : p.coeffs()) out.push_back(exact_div(x, c));
  return UPoly<UPoly<C>>(std::move(out));
}

bool needs_parens(const std::string& s) { return s.find_first_of("+-", 1) != std::string::npos; }

UPoly<Integer> to_integer(const UPoly<Rational>& p) {
  std::vector<Integer> c;
  for (const auto& q : p.coeffs()) {
    if (q.get_den() != 1) throw std::logic_error("expected integer coefficients");
    c.emplace_back(q.get_num());
  }
  return UPoly<Integer>(std::move(c));
}

}  // namespace

template <class C>
BiPoly<C> gcd(const BiPoly<C>& a, const BiPoly<C>& b) {
  auto normalize = [](BiPoly<C> p) {
    if (p.is_zero()) return p;
    auto best = p.terms().begin();
    for (auto it = p.terms().begin(); it != p.terms().end(); ++it)
      if (it->first.j > best->first.j || (it->first.j == best->first.j && it->first.i > best->first.i)) best = it;
    C inv = C(1) / best->second;
    return inv * std::move(p);
  };
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  auto A = a.as_univariate(Var::y);
  auto B = b.as_univariate(Var::y);
  const UPoly<C> cont = gcd(content(A), content(B));
  A = primitive_part(A);
  B = primitive_part(B);
  if (A.degree() < B.degree()) std::swap(A, B);
  UPoly<UPoly<C>> g;
  if (B.degree() == 0) {
    g = UPoly<UPoly<C>>(UPoly<C>(C(1)));
  } else {
    for (;;) {
      auto r = pseudo_remainder(A, B);
      if (r.is_zero()) {
        g = B;
        break;
      }
      if (r.degree() == 0) {
        g = UPoly<UPoly<C>>(UPoly<C>(C(1)));
        break;
      }
      A = std::move(B);
      B = primitive_part(r);
    }
    g = primitive_part(g);
  }
  std::vector<UPoly<C>> scaled;
  for (const auto& c : g.coeffs()) scaled.push_back(c * cont);
  return normalize(BiPoly<C>::from_univariate(UPoly<UPoly<C>>(std::move(scaled)), Var::y));
}

template BiPoly<Rational> gcd(const BiPoly<Rational>&, const BiPoly<Rational>&);
template BiPoly<GaussianRational> gcd(const BiPoly<GaussianRational>&, const BiPoly<GaussianRational>&);

template <class C>
std::string to_string(const BiPoly<C>& p, const std::array<std::string, 2>& vars) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    std::string s = to_string(c);
    bool neg = s[0] == '-' && !needs_parens(s);
    if (neg) s.erase(0, 1);
    if (needs_parens(s)) s = "(" + s + ")";
    os << (first ? (neg ? "-" : "") : (neg ? "-" : "+"));
    first = false;
    std::string mono;
    auto append = [&](const std::string& v, int e) {
      if (e == 0) return;
      if (!mono.empty()) mono += "*";
      mono += v;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    append(vars[0], m.i);
    append(vars[1], m.j);
    if (mono.empty()) os << s;
    else if (s == "1") os << mono;
    else os << s << "*" << mono;
  }
  return os.str();
}

template std::string to_string(const BiPoly<Rational>&, const std::array<std::string, 2>&);
template std::string to_string(const BiPoly<GaussianRational>&, const std::array<std::string, 2>&);

std::string to_json(const Poly& p, const std::array<std::string, 2>& vars) {
  nlohmann::json j;
  j["vars"] = {vars[0], vars[1]};
  j["terms"] = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) j["terms"].push_back({m.i, m.j, c.get_str()});
  return j.dump();
}

Poly poly_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.contains("terms") || !j["terms"].is_array()) throw std::invalid_argument("polynomial JSON without terms");
  Poly p;
  for (const auto& t : j["terms"]) {
    if (!t.is_array() || t.size() != 3) throw std::invalid_argument("malformed polynomial term");
    const int i = t[0].get<int>();
    const int e = t[1].get<int>();
    if (i < 0 || e < 0) throw std::invalid_argument("negative exponent");
    Rational c = parse_rational(t[2].get<std::string>());
    if (is_zero(c)) throw std::invalid_argument("stored zero coefficient");
    if (!is_zero(p.coeff(i, e))) throw std::invalid_argument("duplicate monomial");
    p.add_term({i, e}, c);
  }
  return p;
}

Poly clear_denominators(const Poly& p, Rational* scale) {
  Integer den(1);
  Integer g(0);
  for (const auto& [m, c] : p.terms()) den = lcm(den, Integer(c.get_den()));
  for (const auto& [m, c] : p.terms()) g = gcd(g, Integer(c.get_num()) * divexact(den, Integer(c.get_den())));
  if (g == 0) g = 1;
  Rational factor = make_rational(den, g);
  if (scale) *scale = Rational(1) / factor;
  return factor * p;
}

std::pair<Rational, Poly> content_primitive(const Poly& p) {
  if (p.is_zero()) throw std::domain_error("content of the zero polynomial");
  Rational scale;
  Poly prim = clear_denominators(p, &scale);
  // sign: positive coefficient on the highest pure x-power
  int best = -1;
  Rational sign_coeff;
  for (const auto& [m, c] : prim.terms())
    if (m.j == 0 && m.i > best) {
      best = m.i;
      sign_coeff = c;
    }
  if (best < 0) sign_coeff = prim.terms().begin()->second;
  if (sgn(sign_coeff) < 0) {
    prim = -prim;
    scale = -scale;
  }
  return {scale, prim};
}

Poly resultant(const Poly& p, const Poly& q, Var v) {
  if (p.is_zero() || q.is_zero()) throw std::domain_error("resultant of a zero polynomial");
  Rational sp, sq;
  const Poly ip = clear_denominators(p, &sp);
  const Poly iq = clear_denominators(q, &sq);
  auto to_ring = [&](const Poly& f) {
    const auto u = f.as_univariate(v);
    std::vector<UPoly<Integer>> c;
    for (const auto& inner : u.coeffs()) c.push_back(to_integer(inner));
    return UPoly<UPoly<Integer>>(std::move(c));
  };
  const auto up = to_ring(ip);
  const auto uq = to_ring(iq);
  const UPoly<Integer> r = resultant(up, uq);
  const Rational factor = pow(sp, uq.degree()) * pow(sq, up.degree());
  Poly out;
  const Var w = other(v);
  for (int k = 0; k <= r.degree(); ++k)
    out.add_term(w == Var::x ? Monomial{k, 0} : Monomial{0, k}, factor * Rational(r.coeffs()[k]));
  return out;
}

}  // namespace expcurve
