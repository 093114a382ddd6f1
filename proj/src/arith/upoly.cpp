#include "expcurve/arith/upoly.hpp"

namespace expcurve {

namespace {

int sign_variations(const std::vector<UPoly<Rational>>& chain, const Rational& x) {
  int count = 0;
  int last = 0;
  for (const auto& p : chain) {
    int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

std::vector<UPoly<Rational>> sturm_chain(const UPoly<Rational>& p) {
  std::vector<UPoly<Rational>> chain{p, p.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    UPoly<Rational> r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

}  // namespace

/// Simplest rational (smallest denominator) in the closed interval [lo, hi], lo <= hi.
Rational simplest_rational_between(Rational lo, Rational hi) {
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
  if (sgn(hi) < 0) return -simplest_rational_between(-hi, -lo);
  // 0 < lo <= hi: continued-fraction descent
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  Rational lo_frac = lo - fl;
  Rational hi_frac = hi - fl;
  // fl < lo <= hi < fl+1, recurse on reciprocals
  Rational inner = simplest_rational_between(Rational(1) / hi_frac, Rational(1) / lo_frac);
  return Rational(fl) + Rational(1) / inner;
}

UPoly<Integer> primitive_integer(const UPoly<Rational>& p) {
  if (p.is_zero()) return {};
  Integer den(1);
  for (const auto& c : p.coeffs()) den = lcm(den, Integer(c.get_den()));
  std::vector<Integer> ints;
  Integer g(0);
  for (const auto& c : p.coeffs()) {
    Integer v = Integer(c.get_num()) * divexact(den, Integer(c.get_den()));
    g = gcd(g, v);
    ints.push_back(v);
  }
  if (sgn(ints.back()) < 0) g = -g;
  for (auto& v : ints) v = divexact(v, g);
  return UPoly<Integer>(std::move(ints));
}

std::vector<std::pair<Rational, int>> rational_roots(const UPoly<Rational>& p) {
  std::vector<std::pair<Rational, int>> roots;
  for (const auto& [factor, mult] : squarefree_decomposition(p)) {
    UPoly<Rational> f = factor;
    if (is_zero(f.coeff(0))) {
      roots.emplace_back(Rational(0), mult);
      f = divmod(f, UPoly<Rational>::variable()).first;
    }
    if (f.degree() <= 0) continue;
    const UPoly<Integer> fi = primitive_integer(f);
    const Integer lead = abs(fi.leading());
    // Cauchy bound
    Rational bound(1);
    for (int k = 0; k < f.degree(); ++k) {
      Rational r = abs(f.coeff(k) / f.leading());
      if (r + 1 > bound) bound = r + 1;
    }
    const auto chain = sturm_chain(f);
    const Rational target_width = Rational(1) / (2 * lead * lead);
    std::vector<std::pair<Rational, Rational>> work{{-bound, bound}};
    while (!work.empty()) {
      auto [lo, hi] = work.back();
      work.pop_back();
      int n = sign_variations(chain, lo) - sign_variations(chain, hi);
      if (n == 0) continue;
      if (n > 1 || hi - lo > target_width) {
        Rational mid = (lo + hi) / 2;
        if (is_zero(f(mid))) {
          roots.emplace_back(mid, mult);
          // exclude mid by nudging both halves
          Rational eps = (hi - lo) / 1024;
          while (sign_variations(chain, mid - eps) - sign_variations(chain, mid + eps) != 1) eps /= 2;
          work.emplace_back(lo, mid - eps);
          work.emplace_back(mid + eps, hi);
        } else {
          work.emplace_back(lo, mid);
          work.emplace_back(mid, hi);
        }
        continue;
      }
      // one root in (lo, hi], narrow enough
      if (is_zero(f(hi))) {
        roots.emplace_back(hi, mult);
        continue;
      }
      Rational cand = simplest_rational_between(lo, hi);
      if (Integer(cand.get_den()) <= lead && is_zero(f(cand))) roots.emplace_back(cand, mult);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace expcurve
