#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "expcurve/arith/rational.hpp"
#include "expcurve/arith/upoly.hpp"

namespace expcurve {

enum class Var { x = 0, y = 1 };

inline Var other(Var v) { return v == Var::x ? Var::y : Var::x; }

/// Exponent pair x^i y^j.
struct Monomial {
  int i = 0;
  int j = 0;
  int total() const { return i + j; }
  int deg(Var v) const { return v == Var::x ? i : j; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic with x > y, largest monomial first.
struct GradedLexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.total() != b.total()) return a.total() > b.total();
    return a.i > b.i;
  }
};

/// Sparse polynomial in two variables over a coefficient field or ring C.
/// Zero coefficients are never stored; iteration follows the canonical
/// graded-lex order (highest total degree first, then higher x-power first).
template <class C>
class BiPoly {
 public:
  using Terms = std::map<Monomial, C, GradedLexDescending>;

  BiPoly() = default;
  BiPoly(C constant) { add_term({0, 0}, std::move(constant)); }  // NOLINT
  BiPoly(long constant) : BiPoly(C(constant)) {}  // NOLINT

  static BiPoly monomial(C c, int i, int j) {
    BiPoly p;
    p.add_term({i, j}, std::move(c));
    return p;
  }
  static BiPoly x() { return monomial(C(1), 1, 0); }
  static BiPoly y() { return monomial(C(1), 0, 1); }
  static BiPoly var(Var v) { return v == Var::x ? x() : y(); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total() == 0); }

  C coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? C{} : it->second;
  }
  C constant_term() const { return coeff(0, 0); }

  void add_term(Monomial m, const C& c) {
    if (expcurve::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second = it->second + c;
      if (expcurve::is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.begin()->first.total(); }
  int degree(Var v) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.deg(v));
    return d;
  }
  /// Lowest total degree of a term (the multiplicity at the origin); -1 for zero.
  int order() const { return terms_.empty() ? -1 : terms_.rbegin()->first.total(); }
  /// Largest k with v^k dividing the polynomial.
  int order(Var v) const {
    if (terms_.empty()) return -1;
    int d = terms_.begin()->first.deg(v);
    for (const auto& [m, c] : terms_) d = std::min(d, m.deg(v));
    return d;
  }

  BiPoly homogeneous_part(int k) const {
    BiPoly out;
    for (const auto& [m, c] : terms_)
      if (m.total() == k) out.terms_.emplace(m, c);
    return out;
  }
  BiPoly leading_form() const { return homogeneous_part(degree()); }
  BiPoly lowest_form() const { return homogeneous_part(order()); }

  BiPoly derivative(Var v) const {
    BiPoly out;
    for (const auto& [m, c] : terms_) {
      int e = m.deg(v);
      if (e == 0) continue;
      Monomial n = m;
      (v == Var::x ? n.i : n.j) -= 1;
      out.add_term(n, c * C(static_cast<long>(e)));
    }
    return out;
  }

  /// Divide by v^k; every term must contain v^k.
  BiPoly divided_by_power(Var v, int k) const {
    BiPoly out;
    for (const auto& [m, c] : terms_) {
      if (m.deg(v) < k) throw std::logic_error("monomial division is not exact");
      Monomial n = m;
      (v == Var::x ? n.i : n.j) -= k;
      out.terms_.emplace(n, c);
    }
    return out;
  }

  BiPoly swapped() const {
    BiPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(Monomial{m.j, m.i}, c);
    return out;
  }

  template <class T>
  T operator()(const T& xv, const T& yv) const {
    // Horner in y over coefficient polynomials in x
    const int dy = degree(Var::y);
    if (dy < 0) return T{};
    std::vector<std::vector<std::pair<int, const C*>>> rows(static_cast<std::size_t>(dy) + 1);
    for (const auto& [m, c] : terms_) rows[m.j].emplace_back(m.i, &c);
    T acc{};
    for (int j = dy; j >= 0; --j) {
      T row{};
      auto& r = rows[j];
      std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
      int cur = r.empty() ? 0 : r.front().first;
      for (const auto& [e, cp] : r) {
        while (cur > e) {
          row = row * xv;
          --cur;
        }
        row = row + T(*cp);
      }
      while (cur > 0) {
        row = row * xv;
        --cur;
      }
      acc = acc * yv + row;
    }
    return acc;
  }

  template <class D, class F>
  BiPoly<D> map_coeffs(F&& f) const {
    BiPoly<D> out;
    for (const auto& [m, c] : terms_) out.add_term(m, f(c));
    return out;
  }

  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator-(BiPoly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term({ma.i + mb.i, ma.j + mb.j}, ca * cb);
    return out;
  }
  friend BiPoly operator*(const C& s, BiPoly a) {
    if (expcurve::is_zero(s)) return {};
    for (auto& [m, c] : a.terms_) c = s * c;
    return a;
  }
  BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

  BiPoly pow(unsigned n) const { return power(*this, n); }

  /// Coefficient polynomials in the other variable, indexed by the power of v.
  UPoly<UPoly<C>> as_univariate(Var v) const {
    const int d = degree(v);
    if (d < 0) return {};
    std::vector<std::vector<C>> rows(static_cast<std::size_t>(d) + 1);
    const Var w = other(v);
    for (const auto& [m, c] : terms_) {
      auto& row = rows[m.deg(v)];
      const auto e = static_cast<std::size_t>(m.deg(w));
      if (row.size() <= e) row.resize(e + 1);
      row[e] = c;
    }
    std::vector<UPoly<C>> coeffs;
    for (auto& r : rows) coeffs.emplace_back(std::move(r));
    return UPoly<UPoly<C>>(std::move(coeffs));
  }

  static BiPoly from_univariate(const UPoly<UPoly<C>>& u, Var v) {
    BiPoly out;
    for (int k = 0; k <= u.degree(); ++k) {
      const auto& inner = u.coeffs()[k];
      for (int e = 0; e <= inner.degree(); ++e) {
        Monomial m = v == Var::x ? Monomial{k, e} : Monomial{e, k};
        out.add_term(m, inner.coeffs()[e]);
      }
    }
    return out;
  }

  /// Univariate polynomial in the other variable, embedded as a BiPoly.
  static BiPoly from_upoly(const UPoly<C>& u, Var v) {
    BiPoly out;
    for (int k = 0; k <= u.degree(); ++k) out.add_term(v == Var::x ? Monomial{k, 0} : Monomial{0, k}, u.coeffs()[k]);
    return out;
  }

  /// Reads a polynomial that involves only v as a univariate polynomial.
  UPoly<C> to_upoly(Var v) const {
    std::vector<C> c(static_cast<std::size_t>(std::max(degree(v), 0)) + 1);
    for (const auto& [m, val] : terms_) {
      if (m.deg(other(v)) != 0) throw std::logic_error("polynomial is not univariate");
      c[m.deg(v)] = val;
    }
    return UPoly<C>(std::move(c));
  }

  /// Fix v to a constant, leaving a polynomial in the other variable.
  UPoly<C> specialize(Var v, const C& value) const {
    const auto u = as_univariate(other(v));
    std::vector<C> c;
    for (const auto& inner : u.coeffs()) c.push_back(inner(value));
    return UPoly<C>(std::move(c));
  }

  /// p(x + dx, y + dy)
  BiPoly translated(const C& dx, const C& dy) const {
    BiPoly out;
    const BiPoly sx = x() + BiPoly(dx);
    const BiPoly sy = y() + BiPoly(dy);
    std::vector<BiPoly> px{BiPoly(C(1))};
    std::vector<BiPoly> py{BiPoly(C(1))};
    for (int k = 0; k < degree(Var::x); ++k) px.push_back(px.back() * sx);
    for (int k = 0; k < degree(Var::y); ++k) py.push_back(py.back() * sy);
    for (const auto& [m, c] : terms_) out += c * (px[m.i] * py[m.j]);
    return out;
  }

  /// Sum of c * x^i * y^j with x, y replaced by polynomials.
  BiPoly compose(const BiPoly& sx, const BiPoly& sy) const {
    std::vector<BiPoly> px{BiPoly(C(1))};
    std::vector<BiPoly> py{BiPoly(C(1))};
    for (int k = 0; k < degree(Var::x); ++k) px.push_back(px.back() * sx);
    for (int k = 0; k < degree(Var::y); ++k) py.push_back(py.back() * sy);
    BiPoly out;
    for (const auto& [m, c] : terms_) out += c * (px[m.i] * py[m.j]);
    return out;
  }

 private:
  Terms terms_;
};

template <class C>
bool is_zero(const BiPoly<C>& p) {
  return p.is_zero();
}

using Poly = BiPoly<Rational>;
using GaussPoly = BiPoly<GaussianRational>;

inline GaussPoly to_gaussian(const Poly& p) {
  return p.map_coeffs<GaussianRational>([](const Rational& c) { return GaussianRational(c); });
}

/// Exact quotient a / b; nullopt when b does not divide a. Coefficients in a field.
template <class C>
std::optional<BiPoly<C>> divide(const BiPoly<C>& a, const BiPoly<C>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  // lexicographic leading terms with y > x
  auto lead = [](const BiPoly<C>& p) {
    auto best = p.terms().begin();
    for (auto it = p.terms().begin(); it != p.terms().end(); ++it)
      if (it->first.j > best->first.j || (it->first.j == best->first.j && it->first.i > best->first.i)) best = it;
    return *best;
  };
  const auto [mb, cb] = lead(b);
  BiPoly<C> rem = a;
  BiPoly<C> quo;
  while (!rem.is_zero()) {
    const auto [mr, cr] = lead(rem);
    if (mr.i < mb.i || mr.j < mb.j) return std::nullopt;
    auto t = BiPoly<C>::monomial(cr / cb, mr.i - mb.i, mr.j - mb.j);
    rem -= t * b;
    quo += t;
  }
  return quo;
}

/// Greatest common divisor over a field, by the recursive primitive PRS in y with
/// coefficients in k[x]. Normalized with leading coefficient 1 in the lex order (y > x).
template <class C>
BiPoly<C> gcd(const BiPoly<C>& a, const BiPoly<C>& b);

/// Polynomial JSON: {"vars":["x","y"],"terms":[[i,j,"c"],...]} in graded-lex order.
std::string to_json(const Poly& p, const std::array<std::string, 2>& vars = {"x", "y"});
Poly poly_from_json(const std::string& text);

/// Human-readable form in the expression grammar accepted by parse_poly.
template <class C>
std::string to_string(const BiPoly<C>& p, const std::array<std::string, 2>& vars = {"x", "y"});

extern template std::string to_string(const BiPoly<Rational>&, const std::array<std::string, 2>&);
extern template std::string to_string(const BiPoly<GaussianRational>&, const std::array<std::string, 2>&);
extern template BiPoly<Rational> gcd(const BiPoly<Rational>&, const BiPoly<Rational>&);
extern template BiPoly<GaussianRational> gcd(const BiPoly<GaussianRational>&, const BiPoly<GaussianRational>&);

/// (content, primitive) with p = content * primitive, primitive integral with coprime
/// coefficients and a positive coefficient on the highest pure x-power (or, if there is
/// no pure x-power, on the leading graded-lex term).
std::pair<Rational, Poly> content_primitive(const Poly& p);

/// Integer-coefficient multiple of p with coprime coefficients (sign kept).
Poly clear_denominators(const Poly& p, Rational* scale = nullptr);

/// Res_v(p, q) as a polynomial in the other variable.
Poly resultant(const Poly& p, const Poly& q, Var v);

}  // namespace expcurve
