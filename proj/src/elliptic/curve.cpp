#include <algorithm>
#include <regex>
#include <thread>

#include "expcurve/arith/factor.hpp"
#include "expcurve/arith/upoly.hpp"
#include "expcurve/elliptic.hpp"
#include "json.hpp"

namespace expcurve {

WeierstrassCurve WeierstrassCurve::make(const Integer& a1, const Integer& a2, const Integer& a3, const Integer& a4,
                                        const Integer& a6) {
  WeierstrassCurve w;
  w.a1 = a1;
  w.a2 = a2;
  w.a3 = a3;
  w.a4 = a4;
  w.a6 = a6;
  w.b2 = a1 * a1 + 4 * a2;
  w.b4 = 2 * a4 + a1 * a3;
  w.b6 = a3 * a3 + 4 * a6;
  w.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  w.c4 = w.b2 * w.b2 - 24 * w.b4;
  w.c6 = -w.b2 * w.b2 * w.b2 + 36 * w.b2 * w.b4 - 216 * w.b6;
  w.disc = -w.b2 * w.b2 * w.b8 - 8 * w.b4 * w.b4 * w.b4 - 27 * w.b6 * w.b6 + 9 * w.b2 * w.b4 * w.b6;
  if (w.disc == 0) throw std::domain_error("singular curve");
  w.j = make_rational(w.c4 * w.c4 * w.c4, w.disc);
  return w;
}

std::string WeierstrassCurve::label() const {
  return "[" + a1.get_str() + "," + a2.get_str() + "," + a3.get_str() + "," + a4.get_str() + "," + a6.get_str() + "]";
}

WeierstrassCurve parse_curve(const std::string& text) {
  static const std::regex outer(R"(^\s*\[(.*)\]\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, outer)) throw std::invalid_argument("curve must look like [a1,a2,a3,a4,a6]: " + text);
  std::vector<Integer> c;
  std::string body = m[1];
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    std::string item = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (!item.empty() && item.front() == '+') item.erase(0, 1);
    Integer v;
    if (item.empty() || v.set_str(item, 10) != 0) throw std::invalid_argument("bad curve coefficient: '" + item + "'");
    c.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (c.size() == 2) return WeierstrassCurve::short_form(c[0], c[1]);
  if (c.size() != 5) throw std::invalid_argument("curve needs 5 (or 2) coefficients: " + text);
  return WeierstrassCurve::make(c[0], c[1], c[2], c[3], c[4]);
}

bool operator<(const CurvePoint& a, const CurvePoint& b) {
  if (a.infinity != b.infinity) return a.infinity;
  if (a.infinity) return false;
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

std::string to_string(const CurvePoint& p) {
  if (p.infinity) return "O";
  return "(" + p.x.get_str() + "," + p.y.get_str() + ")";
}

bool on_curve(const WeierstrassCurve& W, const CurvePoint& P) {
  if (P.infinity) return true;
  const Rational& x = P.x;
  const Rational& y = P.y;
  return y * y + Rational(W.a1) * x * y + Rational(W.a3) * y ==
         x * x * x + Rational(W.a2) * x * x + Rational(W.a4) * x + Rational(W.a6);
}

CurvePoint negate(const WeierstrassCurve& W, const CurvePoint& P) {
  if (P.infinity) return P;
  return CurvePoint::affine(P.x, -P.y - Rational(W.a1) * P.x - Rational(W.a3));
}

namespace {

CurvePoint add_unchecked(const WeierstrassCurve& W, const CurvePoint& P, const CurvePoint& Q) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  const Rational a1(W.a1), a2(W.a2), a3(W.a3), a4(W.a4), a6(W.a6);
  Rational lambda, nu;
  if (P.x == Q.x) {
    if (P.y + Q.y + a1 * Q.x + a3 == 0) return CurvePoint::at_infinity();
    const Rational den = 2 * P.y + a1 * P.x + a3;
    lambda = (3 * P.x * P.x + 2 * a2 * P.x + a4 - a1 * P.y) / den;
    nu = (-P.x * P.x * P.x + a4 * P.x + 2 * a6 - a3 * P.y) / den;
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
    nu = (P.y * Q.x - Q.y * P.x) / (Q.x - P.x);
  }
  const Rational x3 = lambda * lambda + a1 * lambda - a2 - P.x - Q.x;
  const Rational y3 = -(lambda + a1) * x3 - nu - a3;
  return CurvePoint::affine(x3, y3);
}

void require_on_curve(const WeierstrassCurve& W, const CurvePoint& P) {
  if (!on_curve(W, P)) throw std::invalid_argument("point " + to_string(P) + " is not on " + W.label());
}

CurvePoint multiple_unchecked(const WeierstrassCurve& W, CurvePoint P, long n) {
  if (n < 0) {
    P = negate(W, P);
    n = -n;
  }
  CurvePoint acc = CurvePoint::at_infinity();
  while (n) {
    if (n & 1) acc = add_unchecked(W, acc, P);
    P = add_unchecked(W, P, P);
    n >>= 1;
  }
  return acc;
}

}  // namespace

CurvePoint add(const WeierstrassCurve& W, const CurvePoint& P, const CurvePoint& Q) {
  require_on_curve(W, P);
  require_on_curve(W, Q);
  return add_unchecked(W, P, Q);
}

CurvePoint multiple(const WeierstrassCurve& W, const CurvePoint& P, long n) {
  require_on_curve(W, P);
  return multiple_unchecked(W, P, n);
}

std::optional<int> torsion_order(const WeierstrassCurve& W, const CurvePoint& P) {
  require_on_curve(W, P);
  CurvePoint Q = P;
  for (int n = 1; n <= 12; ++n) {
    if (Q.infinity) return n;
    Q = add_unchecked(W, Q, P);
  }
  return std::nullopt;
}

std::string TorsionGroup::description() const {
  if (structure.empty()) return "trivial";
  std::string s;
  for (std::size_t k = 0; k < structure.size(); ++k) s += (k ? " x Z/" : "Z/") + std::to_string(structure[k]);
  return s;
}

TorsionGroup torsion(const WeierstrassCurve& W) {
  // integral short model: x' = 36x + 3 b2, y' = 108 (2y + a1 x + a3)
  const Integer A = -27 * W.c4, B = -54 * W.c6;
  const WeierstrassCurve S = WeierstrassCurve::short_form(A, B);
  auto back = [&](const Integer& xs, const Integer& ys) {
    const Rational x = make_rational(xs - 3 * W.b2, 36);
    const Rational y = (make_rational(ys, 108) - Rational(W.a1) * x - Rational(W.a3)) / 2;
    return CurvePoint::affine(x, y);
  };
  std::vector<Integer> ys{0};
  // y^2 | disc: exponents at most half of those in the discriminant
  std::vector<Integer> divisors{1};
  for (const auto& [p, e] : factorize(S.disc)) {
    std::vector<Integer> next;
    for (const auto& d : divisors) {
      Integer pk = 1;
      for (int k = 0; k <= e / 2; ++k) {
        next.push_back(d * pk);
        pk *= p;
      }
    }
    divisors = std::move(next);
  }
  for (const auto& d : divisors) ys.push_back(d);
  TorsionGroup g;
  g.points.push_back(CurvePoint::at_infinity());
  for (const auto& y : ys) {
    const UPoly<Rational> cubic(std::vector<Rational>{Rational(B - y * y), Rational(A), Rational(0), Rational(1)});
    for (const auto& [x, m] : rational_roots(cubic)) {
      if (!is_integer(x)) continue;
      for (int sign : {1, -1}) {
        if (y == 0 && sign < 0) continue;
        const CurvePoint Ps = CurvePoint::affine(x, Rational(sign * y));
        if (!torsion_order(S, Ps)) continue;
        g.points.push_back(back(x.get_num(), sign * y));
      }
    }
  }
  std::sort(g.points.begin(), g.points.end());
  const int n = g.order();
  std::vector<int> orders;
  int two_torsion = 0;
  for (const auto& P : g.points) {
    orders.push_back(*torsion_order(W, P));
    if (orders.back() == 2) ++two_torsion;
  }
  if (n == 1) return g;
  if (two_torsion == 3) {
    g.structure = {2, n / 2};
    int big = -1;
    for (int k = 0; k < n; ++k)
      if (orders[k] == n / 2 && big < 0) big = k;
    g.generators.push_back(g.points[big]);
    const CurvePoint half = n / 2 % 2 == 0 ? multiple_unchecked(W, g.points[big], n / 4) : CurvePoint::at_infinity();
    for (int k = 0; k < n; ++k)
      if (orders[k] == 2 && !(g.points[k] == half)) {
        g.generators.insert(g.generators.begin(), g.points[k]);
        break;
      }
    if (n / 2 == 2) g.generators.resize(2);
  } else {
    g.structure = {n};
    for (int k = 0; k < n; ++k)
      if (orders[k] == n) {
        g.generators.push_back(g.points[k]);
        break;
      }
  }
  return g;
}

NonTorsionCertificate non_torsion_certificate(const WeierstrassCurve& W, const CurvePoint& P) {
  require_on_curve(W, P);
  NonTorsionCertificate c;
  CurvePoint Q = P;
  for (int n = 1; n <= 12; ++n) {
    if (Q.infinity) {
      c.n = n;
      c.reason = "is " + std::to_string(n) + "-torsion";
      return c;
    }
    if (!Q.integral()) {
      c.non_torsion = true;
      c.n = n;
      c.witness = Q;
      c.reason = std::to_string(n) + "P = " + to_string(Q) + " is not integral";
      return c;
    }
    Q = add_unchecked(W, Q, P);
  }
  c.non_torsion = true;
  c.n = 13;
  c.witness = Q;
  c.reason = "order exceeds the Mazur bound";
  return c;
}

std::vector<CurvePoint> integral_points(const WeierstrassCurve& W, long bound, unsigned threads) {
  if (bound < 0) throw std::invalid_argument("negative bound");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const long total = 2 * bound + 1;
  threads = static_cast<unsigned>(std::min<long>(threads, std::max<long>(1, total / 1000)));
  std::vector<std::vector<CurvePoint>> found(threads);
  auto work = [&](unsigned id) {
    const long lo = -bound + total * id / threads, hi = -bound + total * (id + 1) / threads;
    Integer x, b, c, d, s, y;
    for (long xv = lo; xv < hi; ++xv) {
      x = xv;
      b = W.a1 * x + W.a3;
      c = ((x + W.a2) * x + W.a4) * x + W.a6;
      d = b * b + 4 * c;
      if (sgn(d) < 0 || !mpz_perfect_square_p(d.get_mpz_t())) continue;
      mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());
      for (int sign : {1, -1}) {
        if (sign < 0 && s == 0) continue;
        y = sign * s - b;
        if (!mpz_divisible_2exp_p(y.get_mpz_t(), 1)) continue;
        y /= 2;
        found[id].push_back(CurvePoint::affine(Rational(x), Rational(y)));
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned id = 1; id < threads; ++id) pool.emplace_back(work, id);
  work(0);
  for (auto& t : pool) t.join();
  std::vector<CurvePoint> out;
  for (auto& part : found) out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string reduction_to_json(const LocalReduction& r) {
  nlohmann::json j;
  j["p"] = r.p.get_si();
  j["fp"] = r.fp;
  j["kind"] = r.kind;
  j["kodaira"] = r.kodaira;
  j["vdelta"] = r.vdisc;
  return j.dump();
}

std::string curve_to_json(const WeierstrassCurve& W) {
  nlohmann::json j;
  j["ainvs"] = W.label();
  j["c4"] = W.c4.get_str();
  j["c6"] = W.c6.get_str();
  j["disc"] = W.disc.get_str();
  j["j"] = W.j.get_str();
  return j.dump();
}

}  // namespace expcurve
