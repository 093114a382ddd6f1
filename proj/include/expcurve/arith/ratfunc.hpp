#pragma once

#include <array>
#include <string>
#include <string_view>

#include "expcurve/arith/bipoly.hpp"

namespace expcurve {

/// Quotient of two rational bivariate polynomials, kept reduced: gcd(num, den) = 1
/// and den is primitive integral with the content_primitive sign convention.
class RationalFunction {
 public:
  RationalFunction() : den_(Rational(1)) {}
  RationalFunction(Poly num) : num_(std::move(num)), den_(Rational(1)) { normalize_denominator(); }  // NOLINT
  RationalFunction(Poly num, Poly den);
  RationalFunction(long c) : RationalFunction(Poly(Rational(c))) {}  // NOLINT

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RationalFunction derivative(Var v) const;

  /// Exact value at a rational point; throws std::domain_error at a pole.
  Rational operator()(const Rational& x, const Rational& y) const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

 private:
  struct Unreduced {};
  RationalFunction(Poly num, Poly den, Unreduced) : num_(std::move(num)), den_(std::move(den)) {}
  void reduce();
  void normalize_denominator();
  Poly num_;
  Poly den_;
};

/// p(sx, sy) for rational substitutions, reduced; throws std::domain_error if a
/// substitution denominator vanishes identically.
RationalFunction substitute(const Poly& p, const RationalFunction& sx, const RationalFunction& sy);
RationalFunction substitute(const RationalFunction& f, const RationalFunction& sx, const RationalFunction& sy);

/// Parses +, -, *, /, ^ (non-negative integer powers), integers and parentheses over the two
/// named variables, e.g. "(v/2)*(u-13)/(u^2+u-74)".
RationalFunction parse_rational_function(std::string_view text, const std::array<std::string, 2>& vars = {"x", "y"});
Poly parse_poly(std::string_view text, const std::array<std::string, 2>& vars = {"x", "y"});

std::string to_string(const RationalFunction& f, const std::array<std::string, 2>& vars = {"x", "y"});

/// x^2 + y^2, the squared modulus that recurs in every denominator here.
inline Poly modulus_squared() { return Poly::x() * Poly::x() + Poly::y() * Poly::y(); }

}  // namespace expcurve
