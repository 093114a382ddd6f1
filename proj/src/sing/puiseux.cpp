#include <map>
#include <numeric>
#include <sstream>

#include "expcurve/arith/gaussian_roots.hpp"
#include "expcurve/numeric/mpcomplex.hpp"
#include "expcurve/singularities.hpp"

namespace expcurve {

namespace {

// Coefficient policies. Exact works over Q(i) and may give up (nullopt) when an edge
// polynomial does not split there; Numeric carries a magnitude bound next to each value
// so that cancellation to zero can be recognized.

struct ExactField {
  using K = GaussianRational;
  static constexpr int digits = 0;
  static K from(const GaussianRational& g) { return g; }
  static bool zero(const K& a) { return is_zero(a); }
  static K mul(const K& a, const K& b) { return a * b; }
  static K add(const K& a, const K& b) { return a + b; }
  static K scale(const K& a, const Integer& n) { return a * GaussianRational(Rational(n)); }
  static K neg_div(const K& a, const K& b) { return -(a / b); }
  static std::optional<std::vector<std::pair<K, int>>> edge_roots(const std::vector<K>& psi) {
    return gaussian_roots(UPoly<GaussianRational>(psi));
  }
  static std::optional<std::vector<K>> qth_roots(const K& u, int q) { return gaussian_nth_roots(u, q); }
  static std::optional<K> rotate(const K& c, const Rational& gamma) {
    Rational t = gamma * 4;
    if (!is_integer(t)) return std::nullopt;
    Integer k = t.get_num() % 4;
    if (k < 0) k += 4;
    K r = c;
    for (long s = 0; s < k.get_si(); ++s) r = r * GaussianRational::i();
    return r;
  }
  static bool same(const K& a, const K& b) { return a == b; }
  static std::complex<double> approx(const K& a) { return {a.re.get_d(), a.im.get_d()}; }
  static std::string str(const K& a) { return to_string(a); }
};

template <unsigned D>
struct NumericField {
  using R = MpReal<D>;
  using Cx = Complex<R>;
  struct K {
    Cx v;
    R mag;
  };
  static constexpr int digits = static_cast<int>(D);
  static const R& zero_tol() {
    static const R t = pow(R(10), -static_cast<long>(D * 3 / 5));
    return t;
  }
  static const R& same_tol() {
    static const R t = pow(R(10), -static_cast<long>(D / 3));
    return t;
  }
  static K from(const GaussianRational& g) {
    Cx v = Cx::from(g);
    return {v, v.abs()};
  }
  static bool zero(const K& a) { return a.v.abs() <= a.mag * zero_tol(); }
  static K mul(const K& a, const K& b) { return {a.v * b.v, a.mag * b.mag}; }
  static K add(const K& a, const K& b) { return {a.v + b.v, a.mag + b.mag}; }
  static K scale(const K& a, const Integer& n) {
    R s = to_real<R>(Rational(n));
    return {s * a.v, abs(s) * a.mag};
  }
  static K neg_div(const K& a, const K& b) {
    Cx v = -(a.v / b.v);
    return {v, v.abs()};
  }
  static std::optional<std::vector<std::pair<K, int>>> edge_roots(const std::vector<K>& psi) {
    std::vector<Cx> c;
    for (const auto& k : psi) c.push_back(zero(k) ? Cx() : k.v);
    const int deg = static_cast<int>(c.size()) - 1;
    const R tol = pow(R(10), -static_cast<long>(D / (2 * std::max(deg, 1)) + 0));
    std::vector<std::pair<K, int>> out;
    for (const auto& [z, m] : roots_with_multiplicity(c, tol)) out.push_back({K{z, z.abs()}, m});
    return out;
  }
  static std::optional<std::vector<K>> qth_roots(const K& u, int q) {
    std::vector<K> out;
    for (const auto& c : nth_roots(u.v, q)) out.push_back({c, c.abs()});
    return out;
  }
  static std::optional<K> rotate(const K& c, const Rational& gamma) {
    const R two_pi = 2 * boost::math::constants::pi<R>();
    const R ang = two_pi * to_real<R>(gamma);
    Cx w = c.v * Cx::polar(R(1), ang);
    return K{w, c.mag};
  }
  static bool same(const K& a, const K& b) {
    const R scale = std::max(R(1), std::max(a.v.abs(), b.v.abs()));
    return (a.v - b.v).abs() <= same_tol() * scale;
  }
  static std::complex<double> approx(const K& a) { return a.v.to_std(); }
  static std::string str(const K& a) { return format_complex(a.v, 15); }
};

struct SplitFailure {};

template <class F>
class Engine {
 public:
  using K = typename F::K;
  using Local = std::map<std::pair<int, int>, K>;  // (i, j) -> coefficient of x^i y^j

  struct Term {
    Rational exponent;
    K coeff;
    long choice;
  };
  struct Root {
    std::vector<Term> terms;
    std::size_t defining = 0;
    bool terminated = false;
    int E = 1;
  };

  Engine(int extra_terms, int node_cap) : extra_(extra_terms), node_cap_(node_cap) {}

  std::vector<Root> run(const Local& H) {
    roots_.clear();
    expand(H, Rational(0), 1, {});
    return roots_;
  }

  static Local substitute(const Local& H, int p, int q, const K& c, int L) {
    int maxj = 0;
    for (const auto& [m, a] : H) maxj = std::max(maxj, m.second);
    std::vector<K> cp{F::from(GaussianRational(1))};
    for (int k = 1; k <= maxj; ++k) cp.push_back(F::mul(cp.back(), c));
    Local out;
    for (const auto& [m, a] : H) {
      const int base = q * m.first + p * m.second - L;
      if (base < 0) throw std::logic_error("Newton polygon edge below the support");
      Integer binom = 1;
      for (int k = 0; k <= m.second; ++k) {
        // coefficient of y^k in a * (c + y)^j
        K term = F::scale(F::mul(a, cp[m.second - k]), binom);
        auto [it, inserted] = out.try_emplace({base, k}, term);
        if (!inserted) it->second = F::add(it->second, term);
        binom = binom * (m.second - k) / (k + 1);
      }
    }
    for (auto it = out.begin(); it != out.end();) {
      if (F::zero(it->second)) it = out.erase(it);
      else ++it;
    }
    return out;
  }

 private:
  static int y_order_at_zero(const Local& H) {
    int n = -1;
    for (const auto& [m, a] : H)
      if (m.first == 0 && (n < 0 || m.second < n)) n = m.second;
    return n;
  }

  void expand(Local H, Rational A, int E, std::vector<Term> prefix) {
    if (++nodes_ > node_cap_) throw CertificationError("Puiseux recursion exceeded the intersection bound");
    int n = y_order_at_zero(H);
    if (n < 0) throw UnsupportedError("germ not regular in y");
    bool has_j0 = false;
    for (const auto& [m, a] : H)
      if (m.second == 0) has_j0 = true;
    if (!has_j0) {
      roots_.push_back({prefix, prefix.size(), true, E});
      Local shifted;
      for (const auto& [m, a] : H) shifted.emplace(std::make_pair(m.first, m.second - 1), a);
      H = std::move(shifted);
      for (const auto& [m, a] : H)
        if (m.second == 0) has_j0 = true;
      if (!has_j0) throw std::invalid_argument("degenerate input: repeated factor");
      n -= 1;
    }
    if (n == 0) return;
    // lowest x-power for each y-power up to n
    std::vector<int> low(static_cast<std::size_t>(n) + 1, -1);
    for (const auto& [m, a] : H)
      if (m.second <= n && (low[m.second] < 0 || m.first < low[m.second])) low[m.second] = m.first;
    std::vector<std::pair<int, int>> hull;  // (j, i)
    for (int j = 0; j <= n; ++j) {
      if (low[j] < 0) continue;
      std::pair<int, int> pt{j, low[j]};
      while (hull.size() >= 2) {
        const auto& a = hull[hull.size() - 2];
        const auto& b = hull.back();
        // remove b unless it lies strictly below segment a-pt
        const long cross = static_cast<long>(b.first - a.first) * (pt.second - a.second) -
                           static_cast<long>(b.second - a.second) * (pt.first - a.first);
        if (cross <= 0) hull.pop_back();
        else break;
      }
      hull.push_back(pt);
    }
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
      const auto [j1, i1] = hull[e];
      const auto [j2, i2] = hull[e + 1];
      const int dj = j2 - j1, di = i1 - i2;
      if (di <= 0) continue;
      const int g = std::gcd(di, dj);
      const int p = di / g, q = dj / g;
      const int L = q * i1 + p * j1;
      std::vector<K> psi;
      for (int j = j1; j <= j2; j += q) {
        const int num = L - p * j;
        auto it = num % q == 0 ? H.find({num / q, j}) : H.end();
        psi.push_back(it == H.end() ? F::from(GaussianRational()) : it->second);
      }
      auto roots = F::edge_roots(psi);
      if (!roots) throw SplitFailure{};
      int total = 0;
      for (const auto& [u, m] : *roots) total += m;
      if (total != dj / q) throw CertificationError("edge polynomial root count mismatch");
      const Rational A_child = A + make_rational(p, static_cast<long>(q) * E);
      for (const auto& [u, m] : *roots) {
        auto cs = F::qth_roots(u, q);
        if (!cs) throw SplitFailure{};
        for (const auto& c : *cs) {
          std::vector<Term> path = prefix;
          path.push_back({A_child, c, ++choices_});
          Local child = substitute(H, p, q, c, L);
          if (m == 1) {
            finish_leaf(std::move(child), A_child, E * q, std::move(path));
          } else {
            if (y_order_at_zero(child) != m) throw CertificationError("multiplicity of an edge root not confirmed");
            expand(std::move(child), A_child, E * q, std::move(path));
          }
        }
      }
    }
  }

  void finish_leaf(Local H, Rational A, int E, std::vector<Term> path) {
    Root r{path, path.size(), false, E};
    for (int t = 0; t < extra_; ++t) {
      int i0 = -1;
      for (const auto& [m, a] : H)
        if (m.second == 0 && (i0 < 0 || m.first < i0)) i0 = m.first;
      if (i0 < 0) {
        r.terminated = true;
        break;
      }
      auto lin = H.find({0, 1});
      if (lin == H.end()) throw CertificationError("leaf root is not simple");
      const K c = F::neg_div(H.at({i0, 0}), lin->second);
      A += make_rational(i0, E);
      r.terms.push_back({A, c, ++choices_});
      H = substitute(H, i0, 1, c, i0);
    }
    roots_.push_back(std::move(r));
  }

  int extra_;
  int node_cap_;
  long nodes_ = 0;
  long choices_ = 0;
  std::vector<Root> roots_;
};

std::string describe_direction(std::complex<double> dx, std::complex<double> dy) {
  const double scale = std::max(std::abs(dx), std::abs(dy));
  if (std::abs(dy) <= 1e-12 * scale) return "horizontal";
  if (std::abs(dx) <= 1e-12 * scale) return "vertical";
  const std::complex<double> s = dy / dx;
  std::ostringstream os;
  os.precision(12);
  os << "y=";
  if (std::abs(s.imag()) <= 1e-12 * std::abs(s)) os << s.real();
  else os << "(" << s.real() << (s.imag() < 0 ? "" : "+") << s.imag() << "*i)";
  os << "*x";
  return os.str();
}

struct Frame {
  // (x, y) = (a x' + b y', c x' + d y')
  long a = 1, b = 0, c = 0, d = 1;
  std::string name = "identity";
};

template <class F>
struct Analysis {
  PuiseuxResult result;
  std::string signature;
};

template <class F>
Analysis<F> analyze(const GaussPoly& G, const Frame& frame, const PuiseuxOptions& opt) {
  using Eng = Engine<F>;
  typename Eng::Local H;
  for (const auto& [m, c] : G.terms()) H.emplace(std::make_pair(m.i, m.j), F::from(c));
  const int deg = std::max(G.degree(), 1);
  Eng engine(opt.extra_terms, 64 * deg * deg + 64);
  const auto roots = engine.run(H);
  const int n = static_cast<int>(roots.size());

  auto valuation = [&](const typename Eng::Root& a, const typename Eng::Root& b) -> Rational {
    const std::size_t len = std::min(a.terms.size(), b.terms.size());
    for (std::size_t k = 0; k < len; ++k)
      if (a.terms[k].choice != b.terms[k].choice) return std::min(a.terms[k].exponent, b.terms[k].exponent);
    if (a.terms.size() == b.terms.size()) throw InconsistencyError("two identical Puiseux roots");
    return a.terms.size() < b.terms.size() ? b.terms[len].exponent : a.terms[len].exponent;
  };

  // conjugation orbits: X^gamma -> exp(2 pi i gamma) X^gamma
  std::vector<int> owner(n);
  std::iota(owner.begin(), owner.end(), 0);
  auto find = [&](int k) {
    while (owner[k] != k) k = owner[k] = owner[owner[k]];
    return k;
  };
  for (int a = 0; a < n; ++a) {
    const auto& ra = roots[a];
    std::vector<typename F::K> rotated;
    for (std::size_t k = 0; k < ra.defining; ++k) {
      auto r = F::rotate(ra.terms[k].coeff, ra.terms[k].exponent);
      if (!r) throw SplitFailure{};
      rotated.push_back(*r);
    }
    int match = -1, count = 0;
    for (int b = 0; b < n; ++b) {
      const auto& rb = roots[b];
      if (rb.terminated != ra.terminated) continue;
      if (ra.terminated && rb.terms.size() != ra.terms.size()) continue;
      if (rb.terms.size() < ra.defining) continue;
      bool ok = true;
      for (std::size_t k = 0; k < ra.defining && ok; ++k)
        ok = rb.terms[k].exponent == ra.terms[k].exponent && F::same(rb.terms[k].coeff, rotated[k]);
      if (ok) {
        match = b;
        ++count;
      }
    }
    if (count != 1) throw CertificationError("conjugate Puiseux root not identified");
    owner[find(match)] = find(a);
  }
  std::map<int, std::vector<int>> orbit_map;
  for (int k = 0; k < n; ++k) orbit_map[find(k)].push_back(k);
  std::vector<std::vector<int>> orbits;
  for (auto& [k, v] : orbit_map) orbits.push_back(v);

  std::vector<std::vector<Rational>> v(n, std::vector<Rational>(n));
  Rational total(0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) {
        v[a][b] = valuation(roots[a], roots[b]);
        total += v[a][b];
      }

  PuiseuxResult res;
  res.root_count = n;
  res.exact = F::digits == 0;
  res.digits = F::digits;
  res.frame = frame.name;
  const int r = static_cast<int>(orbits.size());
  Rational delta(0);
  std::vector<std::string> branch_sigs;
  for (int bi = 0; bi < r; ++bi) {
    const auto& orb = orbits[bi];
    const int e = static_cast<int>(orb.size());
    Rational inner(0);
    for (int a : orb)
      for (int b : orb)
        if (a != b) inner += v[a][b];
    const Rational db = (inner - e + 1) / 2;
    if (!is_integer(db) || sgn(db) < 0) throw InconsistencyError("non-integral branch delta");
    res.branch_delta.push_back(db);
    delta += db;
    const auto& rep = roots[orb.front()];
    PuiseuxBranch br;
    br.ramification_index = e;
    br.terminates = rep.terminated;
    for (const auto& t : rep.terms) br.terms.push_back({t.exponent, F::str(t.coeff), F::approx(t.coeff)});
    std::complex<double> dxp(1), dyp(0);
    if (rep.terms.empty()) {
      br.multiplicity = 1;
    } else {
      const Rational m = rep.terms.front().exponent * e;
      if (!is_integer(m)) throw InconsistencyError("branch multiplicity not integral");
      br.multiplicity = static_cast<int>(std::min<long>(e, m.get_num().get_si()));
      const Rational& r1 = rep.terms.front().exponent;
      if (r1 < 1) {
        dxp = 0;
        dyp = 1;
      } else if (r1 == 1) {
        dyp = F::approx(rep.terms.front().coeff);
      }
    }
    br.tangent = describe_direction(double(frame.a) * dxp + double(frame.b) * dyp,
                                    double(frame.c) * dxp + double(frame.d) * dyp);
    res.branches.push_back(br);
    std::ostringstream part;
    part << "[" << e << "," << br.multiplicity << "," << db.get_str() << "," << rep.terminated << ":";
    for (std::size_t k = 0; k < rep.defining; ++k) part << rep.terms[k].exponent.get_str() << " ";
    part << "]";
    branch_sigs.push_back(part.str());
  }
  res.intersection.assign(r, std::vector<Rational>(r));
  for (int bi = 0; bi < r; ++bi)
    for (int bj = 0; bj < r; ++bj) {
      if (bi == bj) continue;
      Rational s(0);
      for (int a : orbits[bi])
        for (int b : orbits[bj]) s += v[a][b];
      if (!is_integer(s)) throw InconsistencyError("non-integral intersection number");
      res.intersection[bi][bj] = s;
      if (bi < bj) delta += s;
    }
  const Rational mu = total - n + 1;
  if (!is_integer(mu) || !is_integer(delta)) throw InconsistencyError("non-integral local invariants");
  res.delta = delta.get_num().get_si();
  res.milnor = mu.get_num().get_si();
  int mult = 0;
  for (const auto& br : res.branches) mult += br.multiplicity;
  res.multiplicity = mult;
  std::sort(branch_sigs.begin(), branch_sigs.end());
  std::vector<std::string> isigs;
  for (int bi = 0; bi < r; ++bi)
    for (int bj = bi + 1; bj < r; ++bj) isigs.push_back(res.intersection[bi][bj].get_str());
  std::sort(isigs.begin(), isigs.end());
  std::ostringstream sig;
  for (const auto& b : branch_sigs) sig << b;
  for (const auto& t : isigs) sig << t << ",";
  sig << "|" << res.delta << "|" << res.milnor << "|" << n << "|" << res.multiplicity;
  return {res, sig.str()};
}

template <unsigned D>
Analysis<NumericField<D>> numeric_run(const GaussPoly& G, const Frame& f, const PuiseuxOptions& opt) {
  try {
    return analyze<NumericField<D>>(G, f, opt);
  } catch (const SplitFailure&) {
    throw CertificationError("numeric Puiseux expansion failed");
  }
}

std::pair<GaussPoly, Frame> choose_frame(const GaussPoly& F) {
  auto regular = [](const GaussPoly& G) {
    for (const auto& [m, c] : G.terms())
      if (m.i == 0) return true;
    return false;
  };
  if (regular(F)) return {F, Frame{}};
  GaussPoly s = F.swapped();
  if (regular(s)) return {s, Frame{0, 1, 1, 0, "swap"}};
  for (long k = 1; k <= 16; ++k) {
    GaussPoly t = F.compose(GaussPoly::x() + GaussianRational(k) * GaussPoly::y(), GaussPoly::y());
    if (regular(t)) return {t, Frame{1, k, 0, 1, "shear " + std::to_string(k)}};
  }
  throw UnsupportedError("no regular frame found");
}

}  // namespace

PuiseuxResult newton_puiseux(const GaussPoly& F, const PuiseuxOptions& opt) {
  if (F.is_zero()) throw std::invalid_argument("zero polynomial");
  if (!is_zero(F.constant_term())) throw std::invalid_argument("origin is not on the curve");
  const GaussPoly g = gcd(gcd(F, F.derivative(Var::x)), F.derivative(Var::y));
  if (!g.is_constant()) throw std::invalid_argument("degenerate input: repeated factor");
  const auto [G, frame] = choose_frame(F);
  if (opt.allow_exact) {
    try {
      auto exact = analyze<ExactField>(G, frame, opt);
      return exact.result;
    } catch (const SplitFailure&) {
      // fall through to the numeric backend
    }
  }
  auto lo = numeric_run<100>(G, frame, opt);
  auto mid = numeric_run<200>(G, frame, opt);
  if (lo.signature == mid.signature) return mid.result;
  auto hi = numeric_run<400>(G, frame, opt);
  if (mid.signature == hi.signature) return hi.result;
  throw CertificationError("extension unsupported: Puiseux structure not stable under precision doubling");
}

PuiseuxResult newton_puiseux(const Poly& F, const PuiseuxOptions& opt) { return newton_puiseux(to_gaussian(F), opt); }

}  // namespace expcurve
