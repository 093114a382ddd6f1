#include "expcurve/arith/gaussian_roots.hpp"

#include "expcurve/numeric/mpcomplex.hpp"

namespace expcurve {

namespace {

using R = MpReal<60>;
using C = Complex<R>;

std::optional<Rational> rationalize(const R& v) {
  const Rational q = to_rational(v);
  const Rational tol = Rational(1, 10) * to_rational(pow(R(10), -40) * std::max(R(1), abs(v)));
  Rational r = simplest_rational_between(q - tol, q + tol);
  if (abs(r.get_den()) > Integer("1000000000000")) return std::nullopt;
  return r;
}

std::optional<GaussianRational> rationalize(const C& z) {
  auto re = rationalize(z.re);
  auto im = rationalize(z.im);
  if (!re || !im) return std::nullopt;
  return GaussianRational(*re, *im);
}

std::optional<GaussianRational> exact_sqrt(const GaussianRational& u) {
  if (is_zero(u)) return GaussianRational();
  const auto roots = nth_roots(C::from(u), 2);
  auto c = rationalize(roots.front());
  if (!c || !(*c * *c == u)) return std::nullopt;
  return c;
}

}  // namespace

std::optional<std::vector<std::pair<GaussianRational, int>>> gaussian_roots(const UPoly<GaussianRational>& p) {
  if (p.degree() < 1) return std::vector<std::pair<GaussianRational, int>>{};
  std::vector<std::pair<GaussianRational, int>> out;
  for (const auto& [factor, mult] : squarefree_decomposition(p)) {
    if (factor.degree() < 1) continue;
    std::vector<C> coeffs;
    for (const auto& c : factor.coeffs()) coeffs.push_back(C::from(c));
    for (const auto& [z, m] : roots_with_multiplicity(coeffs, pow(R(10), -30))) {
      if (m != 1) return std::nullopt;
      auto g = rationalize(z);
      if (!g || !is_zero(factor(*g))) return std::nullopt;
      out.emplace_back(*g, mult);
    }
  }
  return out;
}

std::optional<std::vector<GaussianRational>> gaussian_nth_roots(const GaussianRational& u, int q) {
  if (q == 1) return std::vector<GaussianRational>{u};
  if (q == 2) {
    auto s = exact_sqrt(u);
    if (!s) return std::nullopt;
    return std::vector<GaussianRational>{*s, -*s};
  }
  if (q == 4) {
    auto s = exact_sqrt(u);
    if (!s) return std::nullopt;
    auto c = exact_sqrt(*s);
    if (!c) return std::nullopt;
    const GaussianRational i = GaussianRational::i();
    return std::vector<GaussianRational>{*c, *c * i, -*c, -(*c * i)};
  }
  return std::nullopt;
}

}  // namespace expcurve
