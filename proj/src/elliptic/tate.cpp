#include "expcurve/arith/factor.hpp"
#include "expcurve/elliptic.hpp"

namespace expcurve {

namespace {

struct Model {
  Integer a1, a2, a3, a4, a6;
  WeierstrassCurve curve() const { return WeierstrassCurve::make(a1, a2, a3, a4, a6); }
};

Model model_of(const WeierstrassCurve& W) { return {W.a1, W.a2, W.a3, W.a4, W.a6}; }

// x = x' + r, y = y' + s x' + t
Model transform(const Model& m, const Integer& r, const Integer& s, const Integer& t) {
  Model o;
  o.a1 = m.a1 + 2 * s;
  o.a2 = m.a2 - s * m.a1 + 3 * r - s * s;
  o.a3 = m.a3 + r * m.a1 + 2 * t;
  o.a4 = m.a4 - s * m.a3 + 2 * r * m.a2 - (t + r * s) * m.a1 + 3 * r * r - 2 * s * t;
  o.a6 = m.a6 + r * m.a4 + r * r * m.a2 + r * r * r - t * m.a3 - t * t - r * t * m.a1;
  return o;
}

Integer mod(const Integer& a, const Integer& p) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return r;
}

Integer inverse(const Integer& a, const Integer& p) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), mod(a, p).get_mpz_t(), p.get_mpz_t()) == 0) throw std::logic_error("not invertible");
  return r;
}

bool divides(const Integer& p, const Integer& a) { return mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t()) != 0; }

Integer exact(const Integer& a, const Integer& d) {
  if (!divides(d, a)) throw std::logic_error("Tate's algorithm: expected divisibility failed");
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return q;
}

int vp(const Integer& a, const Integer& p) { return a == 0 ? 1000 : valuation(a, p); }

// roots mod p of a polynomial with integer coefficients (low to high); p small
std::vector<Integer> small_roots(const std::vector<Integer>& c, const Integer& p) {
  std::vector<Integer> out;
  for (Integer x = 0; x < p; ++x) {
    Integer v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    if (divides(p, v)) out.push_back(x);
  }
  return out;
}

// double root of y^2 + a y + b (c a quadratic with vanishing discriminant mod p), general leading coefficient
Integer quadratic_double_root(const Integer& lead, const Integer& a, const Integer& b, const Integer& p) {
  if (p == 2) {
    for (const auto& x : small_roots({b, a, lead}, p)) return x;
    throw std::logic_error("no double root mod 2");
  }
  return mod(-a * inverse(2 * lead, p), p);
}

bool legendre_one(const Integer& a, const Integer& p) {
  if (p == 2) return true;
  return mpz_legendre(mod(a, p).get_mpz_t(), p.get_mpz_t()) == 1;
}

LocalReduction finish(const Integer& p, int fp, std::string kind, std::string kodaira, int n) {
  return {p, fp, std::move(kind), std::move(kodaira), n};
}

}  // namespace

LocalReduction tate(const WeierstrassCurve& W, const Integer& p, WeierstrassCurve* out_model) {
  if (!is_prime(p)) throw std::invalid_argument("tate: " + p.get_str() + " is not prime");
  Model m = model_of(W);
  auto done = [&](LocalReduction r) {
    if (out_model) *out_model = m.curve();
    return r;
  };
  const Integer p2 = p * p, p3 = p2 * p;
  for (;;) {
    WeierstrassCurve c = m.curve();
    const int n = valuation(c.disc, p);
    if (n == 0) return done(finish(p, 0, "good", "I0", 0));
    // move the singular point of the reduction to (0, 0)
    Integer r, t;
    if (p <= 3) {
      bool found = false;
      for (Integer x = 0; x < p && !found; ++x)
        for (Integer y = 0; y < p && !found; ++y) {
          const Integer F = y * y + c.a1 * x * y + c.a3 * y - x * x * x - c.a2 * x * x - c.a4 * x - c.a6;
          const Integer Fx = c.a1 * y - 3 * x * x - 2 * c.a2 * x - c.a4;
          const Integer Fy = 2 * y + c.a1 * x + c.a3;
          if (divides(p, F) && divides(p, Fx) && divides(p, Fy)) {
            r = x;
            t = y;
            found = true;
          }
        }
      if (!found) throw std::logic_error("no singular point mod p");
    } else {
      r = divides(p, c.c4) ? mod(-c.b2 * inverse(12, p), p) : mod((18 * c.b6 - c.b2 * c.b4) * inverse(c.c4, p), p);
      t = mod(-(c.a1 * r + c.a3) * inverse(2, p), p);
    }
    m = transform(m, r, 0, t);
    c = m.curve();
    if (!divides(p, c.c4)) {
      // tangent cone y^2 + a1 x y - a2 x^2
      bool split;
      if (p == 2) split = divides(p, m.a2);
      else split = legendre_one(m.a1 * m.a1 + 4 * m.a2, p);
      return done(finish(p, 1, split ? "split multiplicative" : "nonsplit multiplicative", "I" + std::to_string(n), n));
    }
    if (vp(m.a6, p) < 2) return done(finish(p, n, "additive", "II", n));
    if (vp(c.b8, p) < 3) return done(finish(p, n - 1, "additive", "III", n));
    if (vp(c.b6, p) < 3) return done(finish(p, n - 2, "additive", "IV", n));
    // p | a1, a2; p^2 | a3, a4; p^3 | a6
    Integer s = p == 2 ? mod(m.a2, p) : mod(-m.a1 * inverse(2, p), p);
    m = transform(m, 0, s, 0);
    Integer tt = -1;
    if (p <= 3) {
      for (Integer cand = 0; cand < p3; ++cand)
        if (divides(p2, m.a3 + 2 * cand) && divides(p3, m.a6 - cand * m.a3 - cand * cand)) {
          tt = cand;
          break;
        }
      if (tt < 0) throw std::logic_error("Tate's algorithm: no translation found");
    } else {
      tt = mod(-m.a3 * inverse(2, p2), p2);
    }
    m = transform(m, 0, 0, tt);
    const Integer b = exact(m.a2, p), cc = exact(m.a4, p2), d = exact(m.a6, p3);
    const Integer disc = b * b * cc * cc - 4 * cc * cc * cc - 4 * b * b * b * d - 27 * d * d + 18 * b * cc * d;
    if (!divides(p, disc)) return done(finish(p, n - 4, "additive", "I0*", n));
    const bool triple = divides(p, b * b - 3 * cc);
    if (!triple) {
      Integer alpha;
      if (p <= 3) {
        bool found = false;
        for (const auto& x : small_roots({d, cc, b, 1}, p))
          if (divides(p, 3 * x * x + 2 * b * x + cc)) {
            alpha = x;
            found = true;
          }
        if (!found) throw std::logic_error("no double root");
      } else {
        alpha = mod((9 * d - b * cc) * inverse(2 * (b * b - 3 * cc), p), p);
      }
      m = transform(m, alpha * p, 0, 0);
      for (int k = 1;; ++k) {
        if (k % 2 == 1) {
          const Integer e3 = pow(p, (k + 3) / 2), e6 = pow(p, k + 3);
          const Integer qa = exact(m.a3, e3), qb = -exact(m.a6, e6);
          if (!divides(p, qa * qa - 4 * qb))
            return done(finish(p, n - 4 - k, "additive", "I" + std::to_string(k) + "*", n));
          const Integer beta = quadratic_double_root(1, qa, qb, p);
          m = transform(m, 0, 0, beta * e3);
        } else {
          const Integer e4 = pow(p, k / 2 + 2), e6 = pow(p, k + 3);
          const Integer qa = exact(m.a2, p), qb = exact(m.a4, e4), qc = exact(m.a6, e6);
          if (!divides(p, qb * qb - 4 * qa * qc))
            return done(finish(p, n - 4 - k, "additive", "I" + std::to_string(k) + "*", n));
          const Integer beta = quadratic_double_root(qa, qb, qc, p);
          m = transform(m, beta * pow(p, k / 2 + 1), 0, 0);
        }
      }
    }
    Integer alpha;
    if (p == 3) alpha = small_roots({d, cc, b, 1}, p).front();
    else alpha = mod(-b * inverse(3, p), p);
    m = transform(m, alpha * p, 0, 0);
    {
      const Integer qa = exact(m.a3, p2), qb = -exact(m.a6, p2 * p2);
      if (!divides(p, qa * qa - 4 * qb)) return done(finish(p, n - 6, "additive", "IV*", n));
      const Integer beta = quadratic_double_root(1, qa, qb, p);
      m = transform(m, 0, 0, beta * p2);
    }
    if (vp(m.a4, p) < 4) return done(finish(p, n - 7, "additive", "III*", n));
    if (vp(m.a6, p) < 6) return done(finish(p, n - 8, "additive", "II*", n));
    // not minimal at p: scale down and start over
    m = {exact(m.a1, p), exact(m.a2, p2), exact(m.a3, p3), exact(m.a4, p2 * p2), exact(m.a6, p3 * p3)};
  }
}

Conductor conductor(const WeierstrassCurve& W) {
  Conductor c;
  c.N = 1;
  for (const auto& p : prime_divisors(W.disc)) {
    c.local.push_back(tate(W, p));
    c.N *= pow(p, static_cast<unsigned long>(c.local.back().fp));
  }
  return c;
}

WeierstrassCurve minimal_model(const WeierstrassCurve& W) {
  WeierstrassCurve cur = W;
  for (const auto& [p, e] : factorize(W.disc)) {
    if (e < 12) continue;
    WeierstrassCurve next = cur;
    tate(cur, p, &next);
    cur = next;
  }
  // normalize a1, a3 to {0,1} and a2 to {-1,0,1}
  Model m = model_of(cur);
  Integer s, r, t;
  mpz_fdiv_q_2exp(s.get_mpz_t(), m.a1.get_mpz_t(), 1);
  s = -s;
  const Integer a2s = m.a2 - s * m.a1 - s * s;
  // r = -round(a2s / 3)
  Integer q;
  mpz_fdiv_q_ui(q.get_mpz_t(), Integer(a2s + 1).get_mpz_t(), 3);
  r = -q;
  const Integer a3r = m.a3 + r * m.a1;
  mpz_fdiv_q_2exp(t.get_mpz_t(), a3r.get_mpz_t(), 1);
  t = -t;
  m = transform(m, r, s, t);
  return m.curve();
}

bool is_minimal(const WeierstrassCurve& W) { return minimal_model(W).disc == W.disc; }

WeierstrassCurve quadratic_twist(const WeierstrassCurve& W, const Integer& d) {
  if (d == 0) throw std::invalid_argument("twist by zero");
  return minimal_model(WeierstrassCurve::short_form(-27 * W.c4 * d * d, -54 * W.c6 * d * d * d));
}

std::optional<Integer> twist_detect(const WeierstrassCurve& W, const WeierstrassCurve& Wp) {
  if (W.j != Wp.j) return std::nullopt;
  Rational ratio;
  if (W.c4 != 0 && W.c6 != 0) {
    ratio = make_rational(W.c6 * Wp.c4, Wp.c6 * W.c4);
  } else if (W.c6 == 0) {
    // j = 1728: only c4 / c4' = d^2 is available, d up to sign
    const Rational q = make_rational(W.c4, Wp.c4);
    ratio = Rational(squarefree_part(q.get_num() * q.get_den()));
  } else {
    const Rational q = make_rational(W.c6, Wp.c6);
    ratio = Rational(squarefree_part(q.get_num() * q.get_den()));
  }
  const Integer d = squarefree_part(ratio.get_num() * ratio.get_den());
  const WeierstrassCurve a = minimal_model(W), b = quadratic_twist(Wp, d);
  if (a.c4 == b.c4 && a.c6 == b.c6) return d;
  return std::nullopt;
}

}  // namespace expcurve
