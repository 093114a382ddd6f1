#include "expcurve/arith/ratfunc.hpp"

#include <cctype>
#include <stdexcept>

namespace expcurve {

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  reduce();
}

void RationalFunction::normalize_denominator() {
  if (num_.is_zero()) {
    den_ = Poly(Rational(1));
    return;
  }
  auto [c, prim] = content_primitive(den_);
  den_ = std::move(prim);
  num_ = (Rational(1) / c) * std::move(num_);
}

void RationalFunction::reduce() {
  if (!num_.is_zero() && !den_.is_constant()) {
    const Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *divide(num_, g);
      den_ = *divide(den_, g);
    }
  }
  normalize_denominator();
}

RationalFunction RationalFunction::derivative(Var v) const {
  return {num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_};
}

Rational RationalFunction::operator()(const Rational& x, const Rational& y) const {
  Rational d = den_(x, y);
  if (sgn(d) == 0) throw std::domain_error("evaluation at a pole");
  return num_(x, y) / d;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}
RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return {a.num_ - b.num_, a.den_};
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}
RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero rational function");
  return {a.num_ * b.den_, a.den_ * b.num_};
}
RationalFunction operator-(const RationalFunction& a) { return {-a.num_, a.den_, RationalFunction::Unreduced{}}; }
bool operator==(const RationalFunction& a, const RationalFunction& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

RationalFunction substitute(const Poly& p, const RationalFunction& sx, const RationalFunction& sy) {
  if (p.is_zero()) return {};
  const int dx = std::max(p.degree(Var::x), 0);
  const int dy = std::max(p.degree(Var::y), 0);
  auto powers = [](const Poly& base, int n) {
    std::vector<Poly> out{Poly(Rational(1))};
    for (int k = 0; k < n; ++k) out.push_back(out.back() * base);
    return out;
  };
  const auto nx = powers(sx.num(), dx);
  const auto bx = powers(sx.den(), dx);
  const auto ny = powers(sy.num(), dy);
  const auto by = powers(sy.den(), dy);
  Poly num;
  for (const auto& [m, c] : p.terms()) num += c * (nx[m.i] * bx[dx - m.i] * ny[m.j] * by[dy - m.j]);
  return {num, bx[dx] * by[dy]};
}

RationalFunction substitute(const RationalFunction& f, const RationalFunction& sx, const RationalFunction& sy) {
  RationalFunction d = substitute(f.den(), sx, sy);
  if (d.is_zero()) throw std::domain_error("substitution makes the denominator vanish");
  return substitute(f.num(), sx, sy) / d;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::array<std::string, 2>& vars) : s_(text), vars_(vars) {}

  RationalFunction parse() {
    RationalFunction r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument(what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  RationalFunction expr() {
    RationalFunction acc = term();
    for (;;) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }
  RationalFunction term() {
    RationalFunction acc = unary();
    for (;;) {
      if (eat('*')) acc = acc * unary();
      else if (eat('/')) {
        RationalFunction d = unary();
        if (d.is_zero()) fail("division by zero");
        acc = acc / d;
      } else return acc;
    }
  }
  RationalFunction unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RationalFunction power() {
    RationalFunction base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      unsigned e = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
      RationalFunction r(1);
      for (unsigned k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }
  RationalFunction atom() {
    skip();
    if (eat('(')) {
      RationalFunction r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RationalFunction(Poly(Rational(Integer(std::string(s_.substr(start, pos_ - start))))));
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    if (name == vars_[0]) return RationalFunction(Poly::x());
    if (name == vars_[1]) return RationalFunction(Poly::y());
    fail(name.empty() ? "expected an operand" : "unknown variable '" + name + "'");
  }

  std::string_view s_;
  const std::array<std::string, 2>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_rational_function(std::string_view text, const std::array<std::string, 2>& vars) {
  return Parser(text, vars).parse();
}

Poly parse_poly(std::string_view text, const std::array<std::string, 2>& vars) {
  RationalFunction f = parse_rational_function(text, vars);
  if (!f.is_polynomial()) throw std::invalid_argument("expression is not a polynomial: " + std::string(text));
  return (Rational(1) / f.den().constant_term()) * f.num();
}

std::string to_string(const RationalFunction& f, const std::array<std::string, 2>& vars) {
  std::string n = to_string(f.num(), vars);
  if (f.den() == Poly(Rational(1))) return n;
  return "(" + n + ")/(" + to_string(f.den(), vars) + ")";
}

}  // namespace expcurve
