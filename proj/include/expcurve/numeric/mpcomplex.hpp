#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "expcurve/arith/rational.hpp"

namespace expcurve {

template <unsigned Digits>
using MpReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits>,
                                             boost::multiprecision::et_off>;

template <class R>
R to_real(const Rational& q) {
  R n, d;
  mpfr_set_z(n.backend().data(), q.get_num_mpz_t(), MPFR_RNDN);
  mpfr_set_z(d.backend().data(), q.get_den_mpz_t(), MPFR_RNDN);
  return n / d;
}

/// Exact binary value of a finite mpfr number.
template <class R>
Rational to_rational(const R& r) {
  Integer m;
  const long e = mpfr_get_z_2exp(m.get_mpz_t(), r.backend().data());
  Rational q(m);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-e));
  }
  return q;
}

template <class R>
struct Complex {
  R re{0};
  R im{0};

  Complex() = default;
  Complex(R r) : re(std::move(r)) {}  // NOLINT
  Complex(R r, R i) : re(std::move(r)), im(std::move(i)) {}
  Complex(long v) : re(v) {}  // NOLINT

  static Complex from(const GaussianRational& g) { return {to_real<R>(g.re), to_real<R>(g.im)}; }
  static Complex polar(const R& r, const R& theta) { return {r * cos(theta), r * sin(theta)}; }

  R norm() const { return re * re + im * im; }
  R abs() const { return hypot(re, im); }
  R arg() const { return atan2(im, re); }
  Complex conj() const { return {re, -im}; }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const R& s, const Complex& a) { return {s * a.re, s * a.im}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const R n = b.norm();
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  friend Complex operator/(const Complex& a, const R& s) { return {a.re / s, a.im / s}; }

  std::complex<double> to_std() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

template <class R>
Complex<R> ipow(Complex<R> b, unsigned e) {
  Complex<R> r(1);
  while (e) {
    if (e & 1u) r = r * b;
    b = b * b;
    e >>= 1u;
  }
  return r;
}

/// All q-th roots of u, principal root first, then by increasing angle.
template <class R>
std::vector<Complex<R>> nth_roots(const Complex<R>& u, int q) {
  const R two_pi = 2 * boost::math::constants::pi<R>();
  const R r = pow(u.abs(), R(1) / q);
  const R theta = u.arg() / q;
  std::vector<Complex<R>> out;
  for (int k = 0; k < q; ++k) {
    Complex<R> c = Complex<R>::polar(r, theta + two_pi * k / q);
    // one Newton step on c^q - u
    const Complex<R> cq1 = ipow(c, static_cast<unsigned>(q - 1));
    c = c - (cq1 * c - u) / (R(q) * cq1);
    out.push_back(c);
  }
  return out;
}

template <class R>
Complex<R> horner(const std::vector<Complex<R>>& p, const Complex<R>& z) {
  Complex<R> acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

template <class R>
std::vector<Complex<R>> derivative(const std::vector<Complex<R>>& p) {
  std::vector<Complex<R>> d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(R(static_cast<long>(k)) * p[k]);
  return d;
}

/// Simultaneous Aberth-Ehrlich iteration; coefficients low to high, leading one nonzero.
/// Returns approximations to all roots (multiple roots appear as tight clusters).
template <class R>
std::vector<Complex<R>> aberth(const std::vector<Complex<R>>& p, int max_iter = 400) {
  const int n = static_cast<int>(p.size()) - 1;
  if (n < 1) return {};
  const auto dp = derivative(p);
  // Fujiwara-style radius bound
  R bound(0);
  const R lead = p.back().abs();
  for (int k = 0; k < n; ++k) {
    R t = pow(p[k].abs() / lead, R(1) / (n - k));
    if (t > bound) bound = t;
  }
  bound = 2 * bound;
  if (bound == 0) bound = 1;
  std::vector<Complex<R>> z;
  const R two_pi = 2 * boost::math::constants::pi<R>();
  for (int k = 0; k < n; ++k) z.push_back(Complex<R>::polar(bound * R(0.5 + 0.37 * k / n), two_pi * k / n + R(0.4)));
  const R eps = std::numeric_limits<R>::epsilon();
  for (int it = 0; it < max_iter; ++it) {
    R worst(0);
    for (int k = 0; k < n; ++k) {
      const Complex<R> v = horner(p, z[k]);
      if (v.re == 0 && v.im == 0) continue;
      const Complex<R> ratio = v / horner(dp, z[k]);
      Complex<R> s;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        const Complex<R> d = z[k] - z[j];
        if (d.re == 0 && d.im == 0) continue;
        s += Complex<R>(1) / d;
      }
      const Complex<R> w = ratio / (Complex<R>(1) - ratio * s);
      z[k] -= w;
      const R rel = w.abs() / (z[k].abs() + eps);
      if (rel > worst) worst = rel;
    }
    if (worst < eps * 100) break;
  }
  return z;
}

/// Roots with multiplicities: clusters of Aberth approximations within
/// `cluster_tol` (relative to root size) are merged; each cluster is polished by
/// Newton iteration on the (m-1)-th derivative, which has a simple root there.
template <class R>
std::vector<std::pair<Complex<R>, int>> roots_with_multiplicity(const std::vector<Complex<R>>& p, const R& cluster_tol) {
  auto approx = aberth(p);
  std::sort(approx.begin(), approx.end(), [](const auto& a, const auto& b) {
    return a.re < b.re || (a.re == b.re && a.im < b.im);
  });
  const int n = static_cast<int>(approx.size());
  std::vector<int> owner(n);
  for (int k = 0; k < n; ++k) owner[k] = k;
  auto find = [&](int k) {
    while (owner[k] != k) k = owner[k] = owner[owner[k]];
    return k;
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const R scale = std::max(R(1), std::max(approx[a].abs(), approx[b].abs()));
      if ((approx[a] - approx[b]).abs() <= cluster_tol * scale) owner[find(b)] = find(a);
    }
  std::vector<std::pair<Complex<R>, int>> out;
  for (int k = 0; k < n; ++k) {
    if (find(k) != k) continue;
    Complex<R> sum;
    int m = 0;
    for (int j = 0; j < n; ++j)
      if (find(j) == k) {
        sum += approx[j];
        ++m;
      }
    Complex<R> c = sum / R(m);
    auto d = p;
    for (int s = 1; s < m; ++s) d = derivative(d);
    const auto dd = derivative(d);
    for (int it = 0; it < 60; ++it) {
      const Complex<R> den = horner(dd, c);
      if (den.re == 0 && den.im == 0) break;
      const Complex<R> step = horner(d, c) / den;
      c -= step;
      if (step.abs() <= std::numeric_limits<R>::epsilon() * (c.abs() + 1)) break;
    }
    out.emplace_back(c, m);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.first.re < b.first.re || (a.first.re == b.first.re && a.first.im < b.first.im);
  });
  return out;
}

template <class R>
std::string format_complex(const Complex<R>& c, int digits = 12) {
  auto fmt = [digits](const R& v) {
    std::string s = v.str(digits, std::ios_base::fmtflags(0));
    return s == "-0" ? std::string("0") : s;
  };
  const R tiny = pow(R(10), -digits) * std::max(R(1), c.abs());
  const bool has_re = abs(c.re) > tiny, has_im = abs(c.im) > tiny;
  if (!has_im) return has_re ? fmt(c.re) : "0";
  std::string im = fmt(c.im) + "*i";
  if (!has_re) return im;
  return fmt(c.re) + (c.im > 0 ? "+" : "") + im;
}

}  // namespace expcurve
