#include "expcurve/arith/factor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace expcurve {

namespace {

Integer rho(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto step = [&](const Integer& v) -> Integer { return (v * v + c) % n; };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      Integer diff = abs(x - y);
      d = gcd(diff, n);
    }
    if (d != n) return d;
  }
}

void split(const Integer& n, std::map<Integer, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = rho(n);
  split(d, out);
  split(divexact(n, d), out);
}

}  // namespace

bool is_prime(const Integer& n) { return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

std::vector<std::pair<Integer, int>> factorize(const Integer& n) {
  if (n == 0) throw std::domain_error("factorization of zero");
  Integer m = abs(n);
  std::map<Integer, int> found;
  for (unsigned long p = 2; p < 10000 && m > 1; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ++found[Integer(p)];
      m /= p;
    }
  }
  split(m, found);
  return {found.begin(), found.end()};
}

std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> ps;
  for (const auto& [p, e] : factorize(n)) ps.push_back(p);
  return ps;
}

Integer squarefree_part(const Integer& n) {
  if (n == 0) return 0;
  Integer s = sgn(n) < 0 ? -1 : 1;
  for (const auto& [p, e] : factorize(n))
    if (e % 2) s *= p;
  return s;
}

}  // namespace expcurve
