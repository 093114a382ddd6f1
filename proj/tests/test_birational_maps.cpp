#include "expcurve/birational.hpp"
#include "expcurve/derivative.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace expcurve;

namespace {

Poly P(const char* s) { return parse_poly(s); }
UPoly<Rational> M(const char* s) { return parse_poly(s, {"m", "n"}).to_upoly(Var::x); }
AffinePoint ap(const Rational& x, const Rational& y) { return {x, y}; }

}  // namespace

TEST_CASE("inversion of curves") {
  const Poly F3 = curve_polynomial(0, 3).F;
  const Poly G3 = P("-2*x^2*y^2+3*x^3-9*x*y^2+6*x^2-6*y^2");
  CHECK(invert_curve(F3) == G3);
  CHECK(invert_curve(G3) == F3);
  CHECK(invert_curve(curve_polynomial(0, 2).F) == P("x^2-3*y^2-2*x*y^2"));
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      if (a + b < 2) continue;
      const Poly F = curve_polynomial(a, b).F;
      CHECK(invert_curve(invert_curve(F)) == F);
    }
  for (const char* s : {"x^3+y^2-x*y", "x^2+3*y-7*x^4*y", "y^5-x^2+2*x*y"})
    CHECK(invert_curve(invert_curve(P(s))) == content_primitive(P(s)).second);
  CHECK_THROWS_AS(invert_curve(P("(x^2+y^2)*(x-1)")), std::invalid_argument);
}

TEST_CASE("inversion map") {
  const RationalMap inv = inversion_map();
  const RationalMap id = inv.compose(inv);
  CHECK(id.sx == RationalFunction(Poly::x()));
  CHECK(id.sy == RationalFunction(Poly::y()));
  const AffinePoint q = inv(ap(-3, 3));
  CHECK(q[0] == make_rational(-1, 6));
  CHECK(q[1] == make_rational(-1, 6));
  CHECK_THROWS_WITH_AS(inv(ap(0, 0)), doctest::Contains("base point"), std::domain_error);
}

TEST_CASE("pencil slices") {
  const auto s = slice_pencil(curve_polynomial(0, 3).F);
  CHECK(s.k == 4);
  CHECK(s.sign == -1);
  REQUIRE(s.degree() == 2);
  CHECK(s.coeffs[2] == M("6*(m-1)*(m+1)*(m^2+1)^2"));
  CHECK(s.coeffs[1] == M("3*(3*m^2-1)*(m^2+1)"));
  CHECK(s.coeffs[0] == M("2*m^2"));
  const auto cusp = slice_pencil(P("y^2-x^3"));
  CHECK(cusp.k == 2);
  REQUIRE(cusp.degree() == 1);
  // root x = m^2
  CHECK(-cusp.coeffs[0] == M("m^2") * cusp.coeffs[1]);
  CHECK(slice_pencil(curve_polynomial(0, 2).F).degree() == 1);
}

TEST_CASE("slice discriminant") {
  const auto d = slice_discriminant(slice_pencil(curve_polynomial(0, 3).F));
  CHECK(d.D == M("3*(m^2+1)^2*(11*m^4-2*m^2+3)"));
  CHECK(d.content == 3);
  CHECK(d.circle_power == 2);
  CHECK(d.quartic == M("11*m^4-2*m^2+3"));
  CHECK(!d.degenerate);
  const auto deg = slice_discriminant(slice_pencil(P("(y-x^2)^2")));
  CHECK(deg.degenerate);
  CHECK(deg.D.is_zero());
  CHECK(!slice_discriminant(slice_pencil(P("y^2-x^4"))).degenerate);
  CHECK_THROWS_AS(slice_discriminant(slice_pencil(P("y^2-x^3"))), std::invalid_argument);
}

TEST_CASE("quartic invariants") {
  const auto q = quartic_invariants(BinaryQuartic::from(M("11*m^4-2*m^2+3")));
  CHECK(q.I == 400);
  CHECK(q.J == -4736);
  CHECK(q.j == make_rational(62500, 33));
  const auto e = quartic_invariants(BinaryQuartic::from(M("m^4+1")));
  CHECK(e.I == 12);
  CHECK(e.J == 0);
  CHECK(e.j == 1728);
  CHECK_THROWS_WITH_AS(quartic_invariants(BinaryQuartic::from(M("m^4+m^2"))), "singular quartic", std::domain_error);
  // j from the quartic route equals j of the Weierstrass model
  CHECK(q.j == parse_curve("[0,0,0,-75,74]").j);
}

TEST_CASE("C3 pipeline") {
  const auto rec = c3_pipeline();
  CHECK(rec.all_hold());
  CHECK(rec.identities.size() >= 8);
  for (const auto& id : rec.identities) {
    CAPTURE(id.name);
    CHECK(id.residual.is_zero());
  }
  CHECK(rec.weierstrass == std::array<Integer, 5>{0, 0, 0, -75, 74});
  REQUIRE(rec.stages.size() == 4);
  CHECK(rec.stages[1].equation == P("-2*x^2*y^2+3*x^3-9*x*y^2+6*x^2-6*y^2"));
  CHECK(rec.stages[2].equation == P("6*x^3+39*x^2+72*x+36-y^2"));
  CHECK(rec.stages[3].map_to_next[0].empty());
  const auto j = nlohmann::json::parse(pipeline_to_json(rec));
  CHECK(j["j"] == "62500/33");
  CHECK(j["all_hold"] == true);
  CHECK(j["stages"][3]["vars"][0] == "u");
  CHECK(j["weierstrass"][3] == -75);
}

TEST_CASE("point transport") {
  const auto path = transport_path(ap(1, 0), "E", "C3");
  REQUIRE(path.size() == 4);
  CHECK(path[2].stage == "Q");
  CHECK(path[2].point == ap(-2, 0));
  CHECK(path[3].point == ap(make_rational(-1, 2), 0));
  const auto gen = transport_path(ap(-5, 18), "E", "C3");
  CHECK(gen[2].point == ap(-3, 3));
  CHECK(gen[3].point == ap(make_rational(-1, 6), make_rational(-1, 6)));
  // the mirror image lies on C3 as well
  CHECK(is_zero(curve_polynomial(0, 3).F(make_rational(-1, 6), make_rational(1, 6))));
  CHECK(transport_point(ap(make_rational(-1, 6), make_rational(-1, 6)), "C3", "E") == ap(-5, 18));
  CHECK(transport_point(ap(-2, 0), "Q", "E") == ap(1, 0));
  CHECK_THROWS_WITH_AS(transport_point(ap(13, 36), "E", "C3"), doctest::Contains("base point"), std::domain_error);
  CHECK_THROWS_AS(transport_point(ap(0, 1), "E", "C3"), std::invalid_argument);
  CHECK_THROWS_AS(transport_point(ap(1, 0), "E", "X"), std::invalid_argument);
  // integral points of E that avoid the base locus land on C3
  for (const auto& [u, v] : std::vector<std::pair<long, long>>{{-7, 16}, {10, 18}, {301, 5220}, {-5, -18}}) {
    const auto c = transport_point(ap(u, v), "E", "C3");
    CHECK(is_zero(curve_polynomial(0, 3).F(c[0], c[1])));
  }
}

TEST_CASE("C2 parametrization") {
  const auto c2 = parametrize_c2();
  CHECK(c2.identity_holds);
  CHECK(c2.matches_printed);
  // m = 1: 2/((1+1)(1-3)) = -1/2
  CHECK(c2.x(1, 0) == make_rational(-1, 2));
  CHECK(c2.y(1, 0) == make_rational(-1, 2));
  CHECK(is_zero(curve_polynomial(0, 2).F(make_rational(-1, 2), make_rational(-1, 2))));
  CHECK(!is_zero(curve_polynomial(0, 2).F(Rational(-1), Rational(-1))));
  CHECK(c2.x(0, 0) == 0);
  CHECK(substitute(curve_polynomial(0, 2).F, c2.x, c2.y).is_zero());
}
