#include <random>

#include "expcurve/arith/factor.hpp"
#include "expcurve/elliptic.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace expcurve;

namespace {

const WeierstrassCurve E = parse_curve("[0,0,0,-75,74]");
const WeierstrassCurve T264 = parse_curve("[0,1,0,-8,0]");

CurvePoint pt(long x, long y) { return CurvePoint::affine(Rational(x), Rational(y)); }

}  // namespace

TEST_CASE("invariants of E") {
  CHECK(E.c4 == 3600);
  CHECK(E.c6 == -63936);
  CHECK(E.disc == 24634368);
  CHECK(E.disc == -16 * (4 * Integer(-75) * -75 * -75 + 27 * 74 * 74));
  CHECK(E.j == make_rational(62500, 33));
  const auto f = factorize(E.disc);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::make_pair(Integer(2), 10));
  CHECK(f[1] == std::make_pair(Integer(3), 7));
  CHECK(f[2] == std::make_pair(Integer(11), 1));
  CHECK(T264.c4 == 400);
  CHECK(T264.c6 == -2368);
  CHECK(T264.j == E.j);
  CHECK(parse_curve("[0,0,0,0,1]").j == 0);
  CHECK_THROWS_WITH_AS(parse_curve("[0,0,0,0,0]"), "singular curve", std::domain_error);
  CHECK_THROWS_AS(parse_curve("0,0,0,1"), std::invalid_argument);
  CHECK(parse_curve(" [ 0, 0,0 ,-75, +74 ] ") == E);
  CHECK(parse_curve("[-75,74]") == E);
  CHECK(E.label() == "[0,0,0,-75,74]");
}

TEST_CASE("invariant identities on random curves") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-20, 20);
  int made = 0;
  while (made < 200) {
    try {
      const auto W = WeierstrassCurve::make(c(rng), c(rng), c(rng), c(rng), c(rng));
      CHECK(1728 * W.disc == W.c4 * W.c4 * W.c4 - W.c6 * W.c6);
      CHECK(4 * W.b8 == W.b2 * W.b6 - W.b4 * W.b4);
      for (int d : {-1, 2, 3, 5}) CHECK(quadratic_twist(W, d).j == W.j);
      CHECK(minimal_model(W).j == W.j);
      ++made;
    } catch (const std::domain_error&) {
    }
  }
}

TEST_CASE("group law") {
  CHECK(multiple(E, pt(-5, 18), 2) == pt(10, -18));
  CHECK(multiple(E, pt(-5, 18), 3) == CurvePoint::affine(make_rational(19, 25), make_rational(-522, 125)));
  CHECK(on_curve(E, multiple(E, pt(-5, 18), 3)));
  CHECK(add(E, pt(-5, 18), CurvePoint::at_infinity()) == pt(-5, 18));
  CHECK(add(E, pt(-5, 18), negate(E, pt(-5, 18))).infinity);
  CHECK(multiple(E, pt(1, 0), 2).infinity);
  CHECK(multiple(E, pt(-5, 18), -1) == pt(-5, -18));
  CHECK_THROWS_AS(add(E, pt(0, 0), pt(1, 0)), std::invalid_argument);
  // associativity on points generated from P and the torsion point
  std::vector<CurvePoint> pts;
  for (int n = -3; n <= 3; ++n) {
    pts.push_back(multiple(E, pt(-5, 18), n));
    pts.push_back(add(E, pts.back(), pt(1, 0)));
  }
  for (const auto& P : pts)
    for (const auto& Q : pts)
      for (const auto& R : {pts[1], pts[4], pts[9]}) {
        CHECK(add(E, add(E, P, Q), R) == add(E, P, add(E, Q, R)));
        CHECK(add(E, P, Q) == add(E, Q, P));
      }
  // a general model with a1, a3 nonzero
  const auto W = parse_curve("[1,0,1,4,-6]");
  const auto g = torsion(W);
  for (const auto& P : g.points)
    for (const auto& Q : g.points) CHECK(on_curve(W, add(W, P, Q)));
}

TEST_CASE("torsion") {
  const auto t = torsion(E);
  CHECK(t.description() == "Z/2");
  REQUIRE(t.generators.size() == 1);
  CHECK(t.generators[0] == pt(1, 0));
  const auto t264 = torsion(T264);
  CHECK(t264.structure == std::vector<int>{2});
  CHECK(t264.generators[0] == pt(0, 0));
  const auto full = torsion(parse_curve("[0,0,0,-1,0]"));
  CHECK(full.structure == std::vector<int>{2, 2});
  CHECK(full.order() == 4);
  CHECK(torsion(parse_curve("[0,-1,1,-10,-20]")).structure == std::vector<int>{5});
  CHECK(torsion(parse_curve("[1,1,1,-10,-10]")).structure == std::vector<int>{2, 4});
  CHECK(torsion(parse_curve("[0,0,0,0,1]")).structure == std::vector<int>{6});
  CHECK(torsion(parse_curve("[0,0,1,-1,0]")).structure.empty());
}

TEST_CASE("non-torsion certificate") {
  const auto c = non_torsion_certificate(E, pt(-5, 18));
  CHECK(c.non_torsion);
  CHECK(c.n == 3);
  CHECK(c.witness == CurvePoint::affine(make_rational(19, 25), make_rational(-522, 125)));
  const auto t = non_torsion_certificate(E, pt(1, 0));
  CHECK(!t.non_torsion);
  CHECK(t.reason == "is 2-torsion");
  CHECK(non_torsion_certificate(T264, pt(0, 0)).reason == "is 2-torsion");
}

TEST_CASE("conductor via Tate's algorithm") {
  const auto c = conductor(E);
  CHECK(c.N == 1584);
  REQUIRE(c.local.size() == 3);
  CHECK(c.local[0].fp == 4);
  CHECK(c.local[1].fp == 2);
  CHECK(c.local[2].fp == 1);
  CHECK(c.local[0].vdisc == 10);
  CHECK(conductor(T264).N == 264);
  CHECK(tate(E, 5).fp == 0);
  CHECK(tate(E, 5).kind == "good");
  const std::vector<std::pair<const char*, long>> known{{"[0,-1,1,-10,-20]", 11}, {"[0,0,1,-1,0]", 37},
                                                        {"[0,0,0,-1,0]", 32},     {"[0,0,0,0,1]", 36},
                                                        {"[1,0,1,4,-6]", 14},     {"[1,1,1,-10,-10]", 15},
                                                        {"[0,0,1,0,-7]", 27},     {"[1,-1,1,-1,-14]", 17}};
  for (const auto& [label, N] : known) {
    CAPTURE(label);
    CHECK(conductor(parse_curve(label)).N == N);
  }
  // non-minimal model (scaled by u = 2) has the same conductor
  CHECK(conductor(parse_curve("[0,0,0,-1200,4736]")).N == 1584);
  const auto j = nlohmann::json::parse(reduction_to_json(c.local[0]));
  CHECK(j["p"] == 2);
  CHECK(j["fp"] == 4);
  CHECK(j["vdelta"] == 10);
}

TEST_CASE("multiplicative criterion holds prime by prime") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> c(-30, 30);
  int tested = 0;
  while (tested < 60) {
    try {
      const auto W = minimal_model(WeierstrassCurve::make(c(rng) % 2, c(rng) % 2, c(rng) % 2, c(rng), c(rng)));
      for (const auto& r : conductor(W).local) {
        const bool mult = W.c4 % r.p != 0;
        CHECK((r.fp == 1) == mult);
        CHECK(r.fp >= 1);
      }
      ++tested;
    } catch (const std::domain_error&) {
    }
  }
}

TEST_CASE("minimal models") {
  CHECK(is_minimal(E));
  CHECK(minimal_model(parse_curve("[0,0,0,-1200,4736]")) == E);
  CHECK(minimal_model(parse_curve("[0,0,0,0,-432]")) == parse_curve("[0,0,1,0,-7]"));
  CHECK(!is_minimal(parse_curve("[0,0,0,-1200,4736]")));
}

TEST_CASE("quadratic twists") {
  CHECK(twist_detect(E, T264) == Integer(3));
  CHECK(twist_detect(E, E) == Integer(1));
  CHECK(!twist_detect(E, parse_curve("[0,0,0,0,1]")));
  CHECK(quadratic_twist(T264, 3) == E);
  for (int d : {-1, 2, 5, -7}) CHECK(twist_detect(quadratic_twist(E, d), E) == Integer(d));
}

TEST_CASE("integral points") {
  const auto pts = integral_points(E, 1000000);
  for (const auto& p : {pt(1, 0), pt(-5, 18), pt(-5, -18), pt(10, 18), pt(10, -18), pt(13, 36), pt(13, -36),
                        pt(-7, 16), pt(-7, -16), pt(301, 5220), pt(301, -5220)})
    CHECK(std::find(pts.begin(), pts.end(), p) != pts.end());
  CHECK(pts.size() == 11);
  for (const auto& p : pts) {
    CHECK(on_curve(E, p));
    CHECK(std::find(pts.begin(), pts.end(), negate(E, p)) != pts.end());
  }
  const auto small = integral_points(E, 100, 3);
  for (const auto& p : small) CHECK(std::find(pts.begin(), pts.end(), p) != pts.end());
  CHECK(small.size() == 9);
  CHECK(integral_points(E, 1000, 1) == integral_points(E, 1000, 4));
  // general model: y^2 + y = x^3 - x (37a1)
  const auto g = integral_points(parse_curve("[0,0,1,-1,0]"), 100);
  CHECK(g.size() == 10);
}
