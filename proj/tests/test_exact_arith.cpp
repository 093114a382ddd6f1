#include <random>

#include "support.hpp"
#include "expcurve/arith/factor.hpp"
#include "expcurve/arith/ratfunc.hpp"

using namespace expcurve;

namespace {

Poly P(const char* s) { return parse_poly(s); }
RationalFunction R(const char* s) { return parse_rational_function(s); }

Poly random_poly(std::mt19937& rng, int deg, int terms) {
  std::uniform_int_distribution<int> e(0, deg), c(-5, 5);
  Poly p;
  for (int k = 0; k < terms; ++k) {
    int i = e(rng), j = e(rng);
    if (i + j > deg) continue;
    p.add_term({i, j}, make_rational(c(rng), 1 + (k % 3)));
  }
  return p;
}

const char* kF3 = "6*(x^2-y^2)*(x^2+y^2)^2+3*x^5-6*x^3*y^2-9*x*y^4-2*x^2*y^2";
const char* kG3 = "-2*x^2*y^2+3*x^3-9*x*y^2+6*x^2-6*y^2";

}  // namespace

TEST_CASE("rational basics") {
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(to_string(parse_rational("10/-4")) == "-5/2");
  GaussianRational i = GaussianRational::i();
  CHECK(i * i == GaussianRational(Rational(-1)));
  CHECK((GaussianRational(Rational(1), Rational(2)) / GaussianRational(Rational(1), Rational(2))) ==
        GaussianRational(Rational(1)));
}

TEST_CASE("derivative of x/(x^2+y^2)") {
  RationalFunction s = R("x/(x^2+y^2)");
  CHECK(s.derivative(Var::y) == R("-2*x*y/(x^2+y^2)^2"));
  CHECK(s.derivative(Var::x) == R("(y^2-x^2)/(x^2+y^2)^2"));
  CHECK(RationalFunction(1).derivative(Var::y).is_zero());
  // denominators kept reduced
  CHECK(s.derivative(Var::y).den() == P("(x^2+y^2)^2"));
  // finite-difference oracle at (2,3)
  const double h = 1e-6;
  auto f = [](double x, double y) { return x / (x * x + y * y); };
  double fd = (f(2 + h, 3) - f(2 - h, 3)) / (2 * h);
  double exact = s.derivative(Var::x)(Rational(2), Rational(3)).get_d();
  CHECK(fd == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("resultants") {
  CHECK(resultant(P("x^2+1"), P("x-y"), Var::x) == P("y^2+1"));
  CHECK(resultant(P("y^2-x^3"), P("y"), Var::y) == P("-x^3"));
  // Sylvester-determinant oracle for a 2x2 case: Res_y(a y + b, c y + d) = a d - b c
  CHECK(resultant(P("x*y+2"), P("3*y-x"), Var::y) == P("-x^2-6"));
  CHECK_THROWS(resultant(Poly(), P("x"), Var::y));
  // rational coefficients are rescaled exactly
  CHECK(resultant(P("y/2-x"), P("y"), Var::y) == P("x"));
}

TEST_CASE("resultant vanishes iff common factor") {
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    Poly a = random_poly(rng, 2, 4), b = random_poly(rng, 2, 4), c = random_poly(rng, 2, 3);
    if (a.degree(Var::x) < 1 || b.degree(Var::x) < 1 || c.degree(Var::x) < 1) continue;
    CHECK(resultant(a * c, b * c, Var::x).is_zero());
    Poly g = gcd(a, b);
    CHECK(resultant(a, b, Var::x).is_zero() == (g.degree(Var::x) > 0));
  }
}

TEST_CASE("content_primitive") {
  auto [c, p] = content_primitive(P("-2*x^5+4*x^3*y^2+4*x^2*y^2+6*x*y^4"));
  CHECK(c == Rational(-2));
  CHECK(p == P("x^5-2*x^3*y^2-2*x^2*y^2-3*x*y^4"));
  auto [c7, p7] = content_primitive(P("7"));
  CHECK(c7 == Rational(7));
  CHECK(p7 == P("1"));
  auto [cc, pc] = content_primitive(P("x^2+y^2"));
  CHECK(cc == Rational(1));
  CHECK(pc == P("x^2+y^2"));
  CHECK_THROWS(content_primitive(Poly()));
  std::mt19937 rng(3);
  for (int t = 0; t < 30; ++t) {
    Poly q = random_poly(rng, 4, 5);
    if (q.is_zero()) continue;
    auto [k, r] = content_primitive(q);
    CHECK(k * r == q);
  }
}

TEST_CASE("substitution") {
  RationalFunction sx = R("x/(x^2+y^2)"), sy = R("-y/(x^2+y^2)");
  CHECK(substitute(P(kF3), sx, sy) == RationalFunction(P(kG3), P("(x^2+y^2)^4")));
  Poly p = P("x^3-2*x*y+5");
  CHECK(substitute(p, R("x"), R("y")) == RationalFunction(p));
  const std::array<std::string, 2> uv{"u", "v"};
  RationalFunction lhs = substitute(parse_poly(kG3, {"x", "y"}), parse_rational_function("(u-13)/6", uv),
                                    parse_rational_function("(v/2)*(u-13)/(u^2+u-74)", uv));
  RationalFunction rhs = parse_rational_function("(u-13)^2*(u^3-75*u+74-v^2)/(72*(u^2+u-74))", uv);
  CHECK(lhs == rhs);
  CHECK((lhs - rhs).is_zero());
  CHECK_THROWS(substitute(R("1/x"), R("0"), R("y")));
}

TEST_CASE("gcd and squarefree") {
  using U = UPoly<Rational>;
  U t = U::variable();
  CHECK(gcd(t * t - U(1), t - U(1)) == t - U(1));
  CHECK(squarefree_part((t - U(1)) * (t - U(1)) * (t + U(2))) == (t - U(1)) * (t + U(2)));
  using G = UPoly<GaussianRational>;
  G s = G::variable();
  G i(GaussianRational::i());
  CHECK(gcd((s - i) * (s + G(GaussianRational(Rational(2)))), s - i) == s - i);
  // tangent cone of F3 read as a binary form: -2 x^2 y^2 -> x y
  Poly cone = P(kF3).lowest_form();
  CHECK(cone == P("-2*x^2*y^2"));
  Poly sq = cone;
  Poly g = gcd(cone, cone.derivative(Var::x));
  sq = *divide(cone, gcd(g, cone.derivative(Var::y)));
  CHECK(content_primitive(sq).second == P("x*y"));
}

TEST_CASE("bivariate gcd") {
  Poly a = P("(x^2+y^2)*(x-3*y+1)"), b = P("(x^2+y^2)*(x*y-2)");
  CHECK(gcd(a, b) == P("x^2+y^2"));
  CHECK(gcd(P("x^2-y^2"), P("x+y")) == P("x+y"));
  CHECK(gcd(P("x"), P("y")) == P("1"));
}

TEST_CASE("rational roots") {
  UPoly<Rational> p = UPoly<Rational>(std::vector<Rational>{Rational(-6), Rational(1), Rational(2)});  // 2t^2+t-6
  auto r = rational_roots(p);
  REQUIRE(r.size() == 2);
  CHECK(r[0].first == Rational(-2));
  CHECK(r[1].first == Rational(3, 2));
  auto t = UPoly<Rational>::variable();
  auto q = t * t * (t - UPoly<Rational>(Rational(1, 3))) * (t * t + UPoly<Rational>(Rational(2)));
  auto rq = rational_roots(q * q);
  REQUIRE(rq.size() == 2);
  CHECK(rq[0] == std::pair<Rational, int>(Rational(0), 4));
  CHECK(rq[1] == std::pair<Rational, int>(Rational(1, 3), 2));
}

TEST_CASE("reduction is idempotent and derivative obeys the product rule") {
  std::mt19937 rng(11);
  for (int t = 0; t < 15; ++t) {
    Poly a = random_poly(rng, 3, 4), b = random_poly(rng, 3, 4);
    Poly c = random_poly(rng, 2, 3);
    if (c.is_zero() || b.is_zero()) continue;
    RationalFunction f(a * c, b * c);
    RationalFunction g(f.num(), f.den());
    CHECK(g.num() == f.num());
    CHECK(g.den() == f.den());
    for (Var v : {Var::x, Var::y}) {
      Poly lhs = (a * b).derivative(v);
      CHECK(lhs == a.derivative(v) * b + a * b.derivative(v));
    }
  }
}

TEST_CASE("serialization round trip") {
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    Poly p = random_poly(rng, 5, 6);
    CHECK(poly_from_json(to_json(p)) == p);
    CHECK(parse_poly(to_string(p)) == p);
  }
  CHECK(to_json(P("x^2-3*y+1/2")) == R"({"terms":[[2,0,"1"],[0,1,"-3"],[0,0,"1/2"]],"vars":["x","y"]})");
  CHECK_THROWS(poly_from_json(R"({"terms":[[1,0,"0"]]})"));
  CHECK_THROWS(parse_poly("x+"));
  CHECK_THROWS(parse_poly("1/x"));
}

TEST_CASE("integer factorization") {
  auto f = factorize(Integer(24634368));
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<Integer, int>(Integer(2), 10));
  CHECK(f[1] == std::pair<Integer, int>(Integer(3), 7));
  CHECK(f[2] == std::pair<Integer, int>(Integer(11), 1));
  CHECK(squarefree_part(Integer(-72)) == -2);
  Integer big = Integer("1000000007") * Integer("998244353");
  CHECK(factorize(big).size() == 2);
}
