#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "expcurve/arith/rational.hpp"

namespace expcurve {

template <class C>
class UPoly;

template <class C>
struct is_field : std::false_type {};
template <>
struct is_field<Rational> : std::true_type {};
template <>
struct is_field<GaussianRational> : std::true_type {};
template <class C>
inline constexpr bool is_field_v = is_field<C>::value;

template <class C>
bool is_zero(const UPoly<C>& p) {
  return p.is_zero();
}

/// Exact quotient in an integral domain; defined per coefficient ring.
inline Rational exact_quotient(const Rational& a, const Rational& b) { return a / b; }
inline GaussianRational exact_quotient(const GaussianRational& a, const GaussianRational& b) { return a / b; }
inline Integer exact_quotient(const Integer& a, const Integer& b) {
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
    throw std::logic_error("inexact integer division");
  return divexact(a, b);
}
template <class C>
UPoly<C> exact_quotient(const UPoly<C>& a, const UPoly<C>& b);

/// x^n by repeated squaring in any ring with a unit.
template <class R>
R power(R base, unsigned n) {
  R result(1);
  while (n) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n) base = base * base;
  }
  return result;
}

/// Dense univariate polynomial, coefficients stored from low to high degree.
/// The zero polynomial has no stored coefficients and degree -1.
template <class C>
class UPoly {
 public:
  UPoly() = default;
  UPoly(C constant) {  // NOLINT: constants embed as polynomials
    if (!expcurve::is_zero(constant)) coeffs_.push_back(std::move(constant));
  }
  UPoly(long constant) : UPoly(C(constant)) {}  // NOLINT
  explicit UPoly(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static UPoly monomial(C c, int degree) {
    if (expcurve::is_zero(c)) return {};
    std::vector<C> v(static_cast<std::size_t>(degree) + 1);
    v.back() = std::move(c);
    return UPoly(std::move(v));
  }
  static UPoly variable() { return monomial(C(1), 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<C>& coeffs() const { return coeffs_; }

  C coeff(int k) const {
    if (k < 0 || k > degree()) return C{};
    return coeffs_[static_cast<std::size_t>(k)];
  }
  const C& leading() const {
    if (coeffs_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return coeffs_.back();
  }
  /// Order of vanishing at 0; -1 for the zero polynomial.
  int valuation() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      if (!expcurve::is_zero(coeffs_[k])) return static_cast<int>(k);
    return -1;
  }

  template <class T>
  T operator()(const T& x) const {
    T acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }

  UPoly derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<C> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * C(static_cast<long>(k));
    return UPoly(std::move(d));
  }

  UPoly& operator+=(const UPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] = coeffs_[k] + o.coeffs_[k];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] = coeffs_[k] - o.coeffs_[k];
    trim();
    return *this;
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator-(UPoly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<C> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (expcurve::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] = out[i + j] + a.coeffs_[i] * b.coeffs_[j];
    }
    return UPoly(std::move(out));
  }
  friend UPoly operator*(const C& s, UPoly a) {
    for (auto& c : a.coeffs_) c = s * c;
    a.trim();
    return a;
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Coefficients divided exactly by a scalar.
  UPoly divided_by(const C& s) const {
    std::vector<C> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(exact_quotient(c, s));
    return UPoly(std::move(out));
  }

  /// p(t) -> p(t + a)
  UPoly shifted(const C& a) const {
    std::vector<C> c = coeffs_;
    const int n = degree();
    for (int i = 0; i < n; ++i)
      for (int k = n - 1; k >= i; --k) c[k] = c[k] + a * c[k + 1];
    return UPoly(std::move(c));
  }

  UPoly monic() const {
    static_assert(is_field_v<C>);
    if (is_zero()) return {};
    return divided_by(leading());
  }

 private:
  void trim() {
    while (!coeffs_.empty() && expcurve::is_zero(coeffs_.back())) coeffs_.pop_back();
  }
  std::vector<C> coeffs_;
};

/// Quotient and remainder over a field.
template <class C>
std::pair<UPoly<C>, UPoly<C>> divmod(const UPoly<C>& a, const UPoly<C>& b) {
  static_assert(is_field_v<C>);
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<C> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UPoly<C>{}, a};
  std::vector<C> quo(static_cast<std::size_t>(a.degree() - db + 1));
  const C& lb = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    if (is_zero(rem[k])) continue;
    C q = rem[k] / lb;
    for (int i = 0; i <= db; ++i) rem[k - db + i] = rem[k - db + i] - q * b.coeff(i);
    quo[k - db] = std::move(q);
  }
  return {UPoly<C>(std::move(quo)), UPoly<C>(std::move(rem))};
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) a = q b + r.
template <class R>
UPoly<R> pseudo_remainder(const UPoly<R>& a, const UPoly<R>& b) {
  if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero");
  const int db = b.degree();
  if (a.degree() < db) return a;
  std::vector<R> rem = a.coeffs();
  const R& lb = b.leading();
  int steps = a.degree() - db + 1;
  for (int k = a.degree(); k >= db; --k) {
    R lead = rem[k];
    for (auto& c : rem) c = c * lb;
    --steps;
    if (is_zero(lead)) continue;
    for (int i = 0; i <= db; ++i) rem[k - db + i] = rem[k - db + i] - lead * b.coeff(i);
  }
  assert(steps == 0);
  return UPoly<R>(std::move(rem));
}

/// Exact division in R[t]; throws if b does not divide a.
template <class R>
UPoly<R> exact_div(const UPoly<R>& a, const UPoly<R>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.is_zero()) return {};
  const int db = b.degree();
  if (a.degree() < db) throw std::logic_error("inexact polynomial division");
  std::vector<R> rem = a.coeffs();
  std::vector<R> quo(static_cast<std::size_t>(a.degree() - db + 1));
  const R& lb = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    if (is_zero(rem[k])) continue;
    R q = exact_quotient(rem[k], lb);
    for (int i = 0; i <= db; ++i) rem[k - db + i] = rem[k - db + i] - q * b.coeff(i);
    quo[k - db] = std::move(q);
  }
  for (const auto& r : rem)
    if (!is_zero(r)) throw std::logic_error("inexact polynomial division");
  return UPoly<R>(std::move(quo));
}

template <class C>
UPoly<C> exact_quotient(const UPoly<C>& a, const UPoly<C>& b) {
  return exact_div(a, b);
}

/// Monic gcd over a field (zero if both inputs are zero).
template <class C>
UPoly<C> gcd(UPoly<C> a, UPoly<C> b) {
  static_assert(is_field_v<C>);
  while (!b.is_zero()) {
    UPoly<C> r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// p / gcd(p, p'), made monic.
template <class C>
UPoly<C> squarefree_part(const UPoly<C>& p) {
  if (p.degree() <= 0) return p.is_zero() ? p : UPoly<C>(C(1));
  return divmod(p, gcd(p, p.derivative())).first.monic();
}

template <class C>
bool is_squarefree(const UPoly<C>& p) {
  return gcd(p, p.derivative()).degree() <= 0;
}

/// Yun's algorithm: p = lc * prod_k f_k^k with f_k monic, squarefree and coprime.
/// Returns pairs (f_k, k) for the non-constant factors.
template <class C>
std::vector<std::pair<UPoly<C>, int>> squarefree_decomposition(const UPoly<C>& p) {
  std::vector<std::pair<UPoly<C>, int>> out;
  if (p.degree() <= 0) return out;
  UPoly<C> a = p.monic();
  UPoly<C> b = a.derivative();
  UPoly<C> c = gcd(a, b);
  UPoly<C> w = divmod(a, c).first;
  UPoly<C> y = divmod(b, c).first;
  UPoly<C> z = y - w.derivative();
  int k = 1;
  while (w.degree() > 0) {
    UPoly<C> g = gcd(w, z);
    if (g.degree() > 0) out.emplace_back(g, k);
    w = divmod(w, g).first;
    y = divmod(z, g).first;
    z = y - w.derivative();
    ++k;
  }
  return out;
}

/// Resultant by the subresultant pseudo-remainder sequence over an integral domain.
/// Sign convention: the Sylvester determinant with a's coefficients in the first rows,
/// so Res(a, b) = (-1)^(deg a * deg b) Res(b, a).
template <class R>
R resultant(UPoly<R> a, UPoly<R> b) {
  if (a.is_zero() || b.is_zero()) throw std::domain_error("resultant of a zero polynomial");
  R sign(1);
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if (a.degree() % 2 && b.degree() % 2) sign = -sign;
  }
  if (b.degree() == 0) return sign * power(b.leading(), static_cast<unsigned>(a.degree()));
  R g(1);
  R h(1);
  for (;;) {
    const int delta = a.degree() - b.degree();
    if (a.degree() % 2 && b.degree() % 2) sign = -sign;
    UPoly<R> r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.divided_by(g * power(h, static_cast<unsigned>(delta)));
    g = a.leading();
    if (delta > 0) h = exact_quotient(power(g, static_cast<unsigned>(delta)), power(h, static_cast<unsigned>(delta - 1)));
    if (b.is_zero()) return R{};
    if (b.degree() == 0) {
      const int da = a.degree();
      h = exact_quotient(power(b.leading(), static_cast<unsigned>(da)), power(h, static_cast<unsigned>(da - 1)));
      return sign * h;
    }
  }
}

/// Discriminant-free helper: evaluates a rational polynomial at a rational point.
inline Rational eval(const UPoly<Rational>& p, const Rational& x) { return p(x); }

/// All rational roots with multiplicities, by the rational root theorem applied to
/// each squarefree factor (made integral).
std::vector<std::pair<Rational, int>> rational_roots(const UPoly<Rational>& p);

/// Integer polynomial proportional to p with coprime coefficients and positive leading term.
UPoly<Integer> primitive_integer(const UPoly<Rational>& p);

/// Rational with the smallest denominator in [lo, hi], lo <= hi.
Rational simplest_rational_between(Rational lo, Rational hi);

template <class C>
std::string to_string(const UPoly<C>& p, const std::string& var = "t") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const C& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (is_zero(c)) continue;
    std::string s = to_string(c);
    bool neg = !s.empty() && s[0] == '-' && s.find_first_of("+-", 1) == std::string::npos;
    if (neg) s.erase(0, 1);
    bool compound = s.find_first_of("+-", 0) != std::string::npos;
    if (compound) s = "(" + s + ")";
    if (first) os << (neg ? "-" : "");
    else os << (neg ? "-" : "+");
    first = false;
    if (k == 0) {
      os << s;
      continue;
    }
    if (s != "1") os << s << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

inline std::string to_string(const UPoly<Rational>& p) { return to_string<Rational>(p, "t"); }

}  // namespace expcurve
