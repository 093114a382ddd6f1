#include <cmath>

#include "expcurve/derivative.hpp"
#include "expcurve/singularities.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace expcurve;

namespace {

Poly P(const char* s) { return parse_poly(s); }

int count_cuspidal(const PuiseuxResult& r) {
  int n = 0;
  for (const auto& b : r.branches) n += !b.smooth();
  return n;
}

void check_consistency(const SingularityReport& r) {
  CHECK(r.milnor == 2 * r.delta - r.branches + 1);
  if (r.ordinary) CHECK(r.delta == static_cast<long>(r.multiplicity) * (r.multiplicity - 1) / 2);
}

}  // namespace

TEST_CASE("cusp y^2 - x^3") {
  const auto r = newton_puiseux(P("y^2-x^3"));
  REQUIRE(r.branches.size() == 1);
  CHECK(r.exact);
  CHECK(r.branches[0].ramification_index == 2);
  CHECK(r.branches[0].multiplicity == 2);
  CHECK(r.branches[0].terms[0].exponent == make_rational(3, 2));
  CHECK(r.branches[0].terms[0].coefficient == "1");
  CHECK(r.branches[0].terminates);
  CHECK(r.delta == 1);
  CHECK(milnor_number(P("y^2-x^3")).mu == 2);
}

TEST_CASE("node and ordinary points") {
  const auto n = delta_invariant(P("x*y+x^3+y^3"), ProjectivePoint::affine({}, {}));
  CHECK(n.point == "origin");
  CHECK(n.delta == 1);
  CHECK(n.branches == 2);
  CHECK(n.ordinary);
  check_consistency(n);
  const auto t = delta_invariant(P("x^3-y^3+x^4+y^5"), ProjectivePoint::affine({}, {}));
  CHECK(t.multiplicity == 3);
  CHECK(t.delta == 3);
  CHECK(t.ordinary);
  check_consistency(t);
  const auto tac = delta_invariant(P("y^2-x^4-x^5"), ProjectivePoint::affine({}, {}));
  CHECK(tac.delta == 2);
  CHECK(tac.branches == 2);
  CHECK(!tac.ordinary);
  CHECK(tac.milnor == 3);
}

TEST_CASE("irrational edge roots go through the certified numeric path") {
  const auto r = newton_puiseux(P("y^2-2*x^2+x^3"));
  CHECK(!r.exact);
  CHECK(r.digits >= 100);
  CHECK(r.branches.size() == 2);
  CHECK(r.delta == 1);
  for (const auto& b : r.branches) CHECK(std::abs(std::abs(b.terms[0].approx) - std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("Puiseux input validation") {
  CHECK_THROWS_WITH_AS(newton_puiseux(P("y^2-x^2+1")), "origin is not on the curve", std::invalid_argument);
  CHECK_THROWS_WITH_AS(newton_puiseux(P("(y-x^2)^2*(y+x)")), doctest::Contains("degenerate input"),
                       std::invalid_argument);
  CHECK_THROWS_AS(milnor_number(P("(y-x)^2")), std::invalid_argument);
}

TEST_CASE("F2 at the origin") {
  const Poly F = curve_polynomial(0, 2).F;
  const auto r = newton_puiseux(F);
  CHECK(r.branches.size() == 2);
  CHECK(count_cuspidal(r) == 1);
  CHECK(r.delta == 3);
  CHECK(r.multiplicity == 3);
  CHECK(milnor_number(F).mu == 5);
  const auto rep = delta_invariant(F, ProjectivePoint::affine({}, {}));
  CHECK(rep.milnor == 5);
  CHECK(rep.branches == 2);
  check_consistency(rep);
}

TEST_CASE("F3 at the origin") {
  const Poly F = curve_polynomial(0, 3).F;
  const auto r = newton_puiseux(F);
  REQUIRE(r.branches.size() == 3);
  CHECK(r.delta == 7);
  CHECK(r.multiplicity == 4);
  int vertical_smooth = 0, horizontal_cusp = 0;
  for (const auto& b : r.branches) {
    if (b.smooth() && b.tangent == "vertical") ++vertical_smooth;
    if (!b.smooth() && b.tangent == "horizontal" && b.ramification_index == 2) ++horizontal_cusp;
  }
  CHECK(vertical_smooth == 2);
  CHECK(horizontal_cusp == 1);
  // branch deltas and pairwise contacts sum to 7
  Rational sum(0);
  for (const auto& d : r.branch_delta) sum += d;
  for (std::size_t i = 0; i < r.intersection.size(); ++i)
    for (std::size_t j = i + 1; j < r.intersection.size(); ++j) sum += r.intersection[i][j];
  CHECK(sum == 7);
  const auto m = milnor_number(F, 99);
  CHECK(m.mu == 12);
  CHECK(m.seed == 99u);
  CHECK(milnor_number(F, 12345).mu == 12);
}

TEST_CASE("branch profile of F_{0,n}") {
  for (int n = 2; n <= 4; ++n) {
    const auto r = newton_puiseux(curve_polynomial(0, n).F);
    CAPTURE(n);
    CHECK(static_cast<int>(r.branches.size()) - count_cuspidal(r) == n - 1);
    CHECK(count_cuspidal(r) == n / 2);
  }
}

TEST_CASE("circle points") {
  const auto c3 = circle_point_check(curve_polynomial(0, 3).F);
  for (const auto& r : c3) {
    CHECK(r.multiplicity == 2);
    CHECK(r.ordinary);
    CHECK(r.delta == 1);
  }
  CHECK(c3[0].point == "circle(+i)");
  CHECK(c3[1].point == "circle(-i)");
  const auto circle = circle_point_check(P("x^2+y^2-1"));
  CHECK(circle[0].multiplicity == 1);
  CHECK(circle[0].delta == 0);
  CHECK_THROWS_WITH_AS(circle_point_check(P("x^2-y^2-1")), "not on curve", std::invalid_argument);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      if (a + b < 3) continue;
      CAPTURE(a);
      CAPTURE(b);
      const auto rs = circle_point_check(curve_polynomial(a, b).F);
      CHECK(rs[0].multiplicity == a + b - 1);
      CHECK(rs[0].ordinary);
      CHECK(rs[1].delta == rs[0].delta);
    }
}

TEST_CASE("singular locus certification") {
  const auto l3 = certify_singular_locus(curve_polynomial(0, 3).F);
  REQUIRE(l3.affine.size() == 1);
  CHECK(is_zero(l3.affine[0].X));
  CHECK(is_zero(l3.affine[0].Y));
  CHECK(l3.infinite.size() == 2);
  int smooth_factors = 0;
  for (const auto& f : l3.infinity_factors) smooth_factors += !f.singular;
  CHECK(smooth_factors == 1);  // x^2 - y^2 gives the smooth points (1:+-1:0)
  const auto l2 = certify_singular_locus(curve_polynomial(0, 2).F);
  CHECK(l2.affine.size() == 1);
  CHECK(l2.infinite.empty());
  const auto conic = certify_singular_locus(P("x^2+y^2-1"));
  CHECK(conic.affine.empty());
  CHECK(conic.infinite.empty());
  CHECK_THROWS_WITH_AS(certify_singular_locus(P("(x-1)^2-y^2+y^3")), doctest::Contains("certification failed"),
                       CertificationError);
  CHECK_THROWS_AS(certify_singular_locus(P("(x^2+y^2-1)^2")), std::invalid_argument);
}

TEST_CASE("genus of small curves") {
  const auto g3 = genus(curve_polynomial(0, 3).F);
  CHECK(g3.degree == 6);
  CHECK(g3.genus == 1);
  CHECK(g3.reports.size() == 3);
  for (const auto& r : g3.reports) check_consistency(r);
  CHECK(genus(curve_polynomial(0, 2).F).genus == 0);
  CHECK(genus(curve_polynomial(0, 4).F).genus == 4);
  CHECK(genus(P("x^2+y^2-1")).genus == 0);
  CHECK(genus(P("y^2-x^3-x")).genus == 1);
  CHECK_THROWS_WITH_AS(genus(P("y*(y-x)*(y+x)*(y-2*x)")), doctest::Contains("reducibility detected"), CertificationError);
}

TEST_CASE("genus pipeline agrees with the formula for a+b <= 4") {
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      if (a + b < 2) continue;
      CAPTURE(a);
      CAPTURE(b);
      const auto g = genus(curve_polynomial(a, b).F);
      CHECK(g.genus == genus_formula(a, b));
      CHECK(g.genus >= 0);
    }
}

TEST_CASE("genus formula against the table") {
  int entries = 0;
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b) {
      const auto t = tabulated_genus(a, b);
      if (a + b < 2) {
        CHECK(!t);
        continue;
      }
      REQUIRE(t);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(genus_formula(a, b) == *t);
      ++entries;
    }
  CHECK(entries == 33);
  CHECK(genus_formula(0, 3) == 1);
  CHECK(genus_formula(5, 5) == 88);
  CHECK(genus_formula(2, 2) == 10);
  CHECK(genus_formula(3, 2) == 18);
  CHECK_THROWS_AS(genus_formula(1, 0), std::invalid_argument);
}

TEST_CASE("printed formula variants") {
  for (int n = 2; n <= 5; ++n) CHECK(pure_genus_formula(n) == genus_formula_exact(0, n));
  CHECK(printed_pure_genus(3) == 7);
  CHECK(pure_genus_formula(3) == 1);
  CHECK(printed_pure_genus(4) == pure_genus_formula(4));
  CHECK(!printed_mixed_genus(1, 2));
  CHECK(*printed_mixed_genus(0, 4) == 4);
  CHECK(*printed_mixed_genus(2, 3) == genus_formula_exact(2, 3));
}

TEST_CASE("genus report json") {
  const auto g = genus(curve_polynomial(0, 3).F);
  const auto j = nlohmann::json::parse(genus_report_to_json(g, 0, 3));
  CHECK(j["a"] == 0);
  CHECK(j["b"] == 3);
  CHECK(j["degree"] == 6);
  CHECK(j["genus"] == 1);
  REQUIRE(j["singularities"].size() == 3);
  CHECK(j["singularities"][0]["point"] == "origin");
  CHECK(j["singularities"][0]["delta"] == 7);
  CHECK(j["singularities"][0]["r"] == 3);
  CHECK(j["singularities"][1]["point"] == "circle(+i)");
  CHECK(j["singularities"][1]["ordinary"] == true);
}
