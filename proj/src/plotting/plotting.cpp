#include "expcurve/plotting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "expcurve/derivative.hpp"
#include "expcurve/singularities.hpp"

namespace expcurve {

namespace {

void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double z = s - a;
  e = (a - (s - z)) + (b - z);
}

double comp_horner(const std::vector<double>& a, double x) {
  if (a.empty()) return 0;
  double s = a.back(), c = 0;
  for (std::size_t k = a.size() - 1; k-- > 0;) {
    const double p = s * x;
    const double pe = std::fma(s, x, -p);
    double se;
    two_sum(p, a[k], s, se);
    c = c * x + (pe + se);
  }
  return s + c;
}

unsigned worker_count(int requested, std::size_t jobs) {
  unsigned n = requested > 0 ? static_cast<unsigned>(requested) : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

template <class F>
void parallel_for(std::size_t jobs, int threads, F&& body) {
  const unsigned n = worker_count(threads, jobs);
  if (n <= 1) {
    for (std::size_t k = 0; k < jobs; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t)
    pool.emplace_back([&] {
      for (std::size_t k; (k = next++) < jobs;) body(k);
    });
  for (auto& th : pool) th.join();
}

// Edge identity on the fine lattice: start vertex, direction (0 horizontal, 1 vertical), length.
using EdgeKey = std::tuple<long, long, int, int>;

struct Segment {
  EdgeKey ka, kb;
  PlotPoint a, b;
};

struct Corner {
  double x, y, v;
};

PlotPoint crossing(const Corner& p, const Corner& q) {
  const double t = p.v / (p.v - q.v);
  return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
}

// Corners c00, c10, c11, c01 counterclockwise from the lower left; keys of bottom, right, top, left edges.
void march_cell(const FloatPoly& f, const std::array<Corner, 4>& c, const std::array<EdgeKey, 4>& keys,
                std::vector<Segment>& out) {
  const auto pos = [](double v) { return v >= 0; };
  const std::array<std::pair<int, int>, 4> edges{{{0, 1}, {1, 2}, {3, 2}, {0, 3}}};
  std::array<bool, 4> cut{};
  std::array<PlotPoint, 4> pt{};
  int count = 0;
  for (int e = 0; e < 4; ++e) {
    const auto& [p, q] = edges[e];
    if (pos(c[p].v) != pos(c[q].v)) {
      cut[e] = true;
      pt[e] = crossing(c[p], c[q]);
      ++count;
    }
  }
  const auto add = [&](int e1, int e2) { out.push_back({keys[e1], keys[e2], pt[e1], pt[e2]}); };
  if (count == 2) {
    int e1 = -1, e2 = -1;
    for (int e = 0; e < 4; ++e)
      if (cut[e]) (e1 < 0 ? e1 : e2) = e;
    add(e1, e2);
  } else if (count == 4) {
    const double vc = f((c[0].x + c[2].x) / 2, (c[0].y + c[2].y) / 2);
    if (pos(vc) == pos(c[0].v)) {
      add(0, 1);
      add(2, 3);
    } else {
      add(0, 3);
      add(1, 2);
    }
  }
}

std::vector<Polyline> chain(const std::vector<Segment>& segs) {
  std::map<EdgeKey, std::vector<std::size_t>> ends;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    ends[segs[k].ka].push_back(k);
    ends[segs[k].kb].push_back(k);
  }
  std::vector<bool> used(segs.size(), false);
  const auto step = [&](std::size_t from, const EdgeKey& key) -> std::optional<std::size_t> {
    const auto& v = ends.at(key);
    if (v.size() != 2) return std::nullopt;
    const std::size_t other = v[0] == from ? v[1] : v[0];
    if (used[other]) return std::nullopt;
    return other;
  };
  // extends the polyline from segment k through its end `key`
  const auto grow = [&](std::size_t k, EdgeKey key, std::vector<PlotPoint>& line) {
    while (auto nx = step(k, key)) {
      k = *nx;
      used[k] = true;
      const bool forward = segs[k].ka == key;
      line.push_back(forward ? segs[k].b : segs[k].a);
      key = forward ? segs[k].kb : segs[k].ka;
    }
  };
  std::vector<Polyline> lines;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    if (used[k]) continue;
    used[k] = true;
    std::vector<PlotPoint> fwd{segs[k].a, segs[k].b};
    grow(k, segs[k].kb, fwd);
    std::vector<PlotPoint> back;
    grow(k, segs[k].ka, back);
    Polyline line(back.rbegin(), back.rend());
    line.insert(line.end(), fwd.begin(), fwd.end());
    lines.push_back(std::move(line));
  }
  return lines;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  return s == "-0.000" ? "0.000" : s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

void svg_body(std::ostringstream& os, const std::vector<Polyline>& polylines, const Window& w, double width,
              double height, const SvgStyle& style) {
  const auto px = [&](double x) { return (x - w.xmin) / (w.xmax - w.xmin) * width; };
  const auto py = [&](double y) { return (w.ymax - y) / (w.ymax - w.ymin) * height; };
  if (style.axes) {
    if (w.xmin <= 0 && 0 <= w.xmax)
      os << "<line x1=\"" << fmt(px(0)) << "\" y1=\"0.000\" x2=\"" << fmt(px(0)) << "\" y2=\"" << fmt(height)
         << "\" stroke=\"#bbbbbb\" stroke-width=\"0.5\"/>\n";
    if (w.ymin <= 0 && 0 <= w.ymax)
      os << "<line x1=\"0.000\" y1=\"" << fmt(py(0)) << "\" x2=\"" << fmt(width) << "\" y2=\"" << fmt(py(0))
         << "\" stroke=\"#bbbbbb\" stroke-width=\"0.5\"/>\n";
  }
  for (const auto& line : polylines) {
    os << "<path fill=\"none\" stroke=\"" << xml_escape(style.stroke) << "\" stroke-width=\""
       << fmt(style.stroke_width) << "\" stroke-linejoin=\"round\" d=\"";
    for (std::size_t k = 0; k < line.size(); ++k)
      os << (k == 0 ? "M" : " L") << fmt(px(line[k][0])) << ' ' << fmt(py(line[k][1]));
    os << "\"/>\n";
  }
}

const char* kSvgHeader = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";

}  // namespace

Window parse_window(const std::string& s) {
  Window w;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf%c", &w.xmin, &w.xmax, &w.ymin, &w.ymax, &tail) != 4)
    throw std::invalid_argument("window must be xmin,xmax,ymin,ymax: " + s);
  if (!w.valid()) throw std::invalid_argument("empty window: " + s);
  return w;
}

FloatPoly::FloatPoly(const Poly& F) {
  rows_.resize(std::max(F.degree(Var::y), 0) + 1);
  for (const auto& [m, c] : F.terms()) {
    auto& row = rows_[m.j];
    if (static_cast<int>(row.size()) <= m.i) row.resize(m.i + 1, 0.0);
    row[m.i] = c.get_d();
  }
}

double FloatPoly::operator()(double x, double y) const {
  std::vector<double> cy(rows_.size());
  for (std::size_t j = 0; j < rows_.size(); ++j) cy[j] = comp_horner(rows_[j], x);
  return comp_horner(cy, y);
}

std::vector<Polyline> trace_real_locus(const PlotSpec& spec) {
  if (spec.F.is_zero()) throw std::invalid_argument("cannot trace the zero polynomial");
  if (!spec.window.valid()) throw std::invalid_argument("empty plot window");
  if (spec.resolution < 16) throw std::invalid_argument("plot resolution must be at least 16");
  if (spec.origin_refinement < 1) throw std::invalid_argument("origin refinement must be positive");
  const FloatPoly f(spec.F);
  const Window& w = spec.window;
  const int n = spec.resolution;
  const long R = spec.origin_refinement;
  std::vector<double> xs(n + 1), ys(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = w.xmin + (w.xmax - w.xmin) * i / n;
    ys[i] = w.ymin + (w.ymax - w.ymin) * i / n;
  }
  std::vector<double> grid(static_cast<std::size_t>(n + 1) * (n + 1));
  parallel_for(n + 1, spec.threads, [&](std::size_t j) {
    for (int i = 0; i <= n; ++i) grid[j * (n + 1) + i] = f(xs[i], ys[j]);
  });
  const auto at = [&](int i, int j) { return grid[static_cast<std::size_t>(j) * (n + 1) + i]; };
  const auto key = [&](long I, long J, int dir, int len) { return EdgeKey{I, J, dir, len}; };
  std::vector<Segment> segs;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const bool origin = xs[i] <= 0 && 0 <= xs[i + 1] && ys[j] <= 0 && 0 <= ys[j + 1];
      if (!origin || R == 1) {
        const long I = R * i, J = R * j;
        const int L = static_cast<int>(R);
        march_cell(f,
                   {{{xs[i], ys[j], at(i, j)},
                     {xs[i + 1], ys[j], at(i + 1, j)},
                     {xs[i + 1], ys[j + 1], at(i + 1, j + 1)},
                     {xs[i], ys[j + 1], at(i, j + 1)}}},
                   {key(I, J, 0, L), key(I + R, J, 1, L), key(I, J + R, 0, L), key(I, J, 1, L)}, segs);
        continue;
      }
      // the cells touching the origin are subdivided so that cusps render
      std::vector<double> sx(R + 1), sy(R + 1);
      for (long k = 0; k <= R; ++k) {
        sx[k] = k == R ? xs[i + 1] : xs[i] + (xs[i + 1] - xs[i]) * k / R;
        sy[k] = k == R ? ys[j + 1] : ys[j] + (ys[j + 1] - ys[j]) * k / R;
      }
      std::vector<double> sub((R + 1) * (R + 1));
      for (long q = 0; q <= R; ++q)
        for (long p = 0; p <= R; ++p) sub[q * (R + 1) + p] = f(sx[p], sy[q]);
      const auto sat = [&](long p, long q) { return sub[q * (R + 1) + p]; };
      for (long q = 0; q < R; ++q)
        for (long p = 0; p < R; ++p) {
          const long I = R * i + p, J = R * j + q;
          march_cell(f,
                     {{{sx[p], sy[q], sat(p, q)},
                       {sx[p + 1], sy[q], sat(p + 1, q)},
                       {sx[p + 1], sy[q + 1], sat(p + 1, q + 1)},
                       {sx[p], sy[q + 1], sat(p, q + 1)}}},
                     {key(I, J, 0, 1), key(I + 1, J, 1, 1), key(I, J + 1, 0, 1), key(I, J, 1, 1)}, segs);
        }
    }
  return chain(segs);
}

std::string emit_svg(const std::vector<Polyline>& polylines, const Window& window, const SvgStyle& style) {
  if (!window.valid()) throw std::invalid_argument("empty plot window");
  std::ostringstream os;
  os << kSvgHeader << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << style.width
     << "\" height=\"" << style.height << "\" viewBox=\"0 0 " << style.width << ' ' << style.height << "\">\n";
  if (!style.title.empty()) os << "<title>" << xml_escape(style.title) << "</title>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << style.width << "\" height=\"" << style.height
     << "\" fill=\"white\"/>\n";
  svg_body(os, polylines, window, style.width, style.height, style);
  os << "</svg>\n";
  return os.str();
}

Window default_window(int a, int b) {
  if (a == 0 && b == 2) return {-1, 1, -1, 1};
  if (a == 0 && b == 3) return {-1.2, 0.6, -0.9, 0.9};
  return {-1.5, 1.5, -1.5, 1.5};
}

std::optional<Window> default_named_window(const std::string& name) {
  if (name == "C2") return default_window(0, 2);
  if (name == "C3") return default_window(0, 3);
  if (name == "Q") return Window{-6, 4, -8, 8};
  if (name == "W") return Window{-6, 2, -12, 12};
  if (name == "E") return Window{-10, 20, -60, 60};
  return std::nullopt;
}

std::vector<AtlasCell> build_atlas(int max_a, int max_b, int resolution, int threads,
                                   const std::function<Poly(int, int)>& source) {
  if (max_a < 0 || max_b < 0) throw std::invalid_argument("atlas bounds must be nonnegative");
  std::vector<AtlasCell> cells;
  for (int a = 0; a <= max_a; ++a)
    for (int b = 0; b <= max_b; ++b)
      if (a + b >= 2) cells.push_back({a, b, {}, {}, default_window(a, b)});
  parallel_for(cells.size(), threads, [&](std::size_t k) {
    auto& c = cells[k];
    c.genus = tabulated_genus(c.a, c.b);
    if (!c.genus) c.genus = genus_formula(c.a, c.b);
    const Poly F = source ? source(c.a, c.b) : curve_polynomial(c.a, c.b).F;
    c.locus = trace_real_locus({F, c.window, resolution, 4, 1});
  });
  return cells;
}

std::string emit_atlas_svg(const std::vector<AtlasCell>& cells, int max_a, int max_b, int panel) {
  const int label = 18;
  const int width = (max_b + 1) * panel, height = (max_a + 1) * (panel + label);
  std::ostringstream os;
  os << kSvgHeader << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<title>Atlas of F_{a,b} = 0, a &lt;= " << max_a << ", b &lt;= " << max_b << "</title>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  SvgStyle style;
  style.stroke_width = 1.0;
  for (const auto& c : cells) {
    const int x0 = c.b * panel, y0 = c.a * (panel + label);
    os << "<g>\n<text x=\"" << x0 + 4 << "\" y=\"" << y0 + 13
       << "\" font-family=\"sans-serif\" font-size=\"11\">C(" << c.a << ',' << c.b << ')';
    if (c.genus) os << "  g = " << *c.genus;
    os << "</text>\n<svg x=\"" << x0 << "\" y=\"" << y0 + label << "\" width=\"" << panel << "\" height=\"" << panel
       << "\" viewBox=\"0 0 " << panel << ' ' << panel << "\">\n";
    os << "<rect x=\"0.5\" y=\"0.5\" width=\"" << panel - 1 << "\" height=\"" << panel - 1
       << "\" fill=\"none\" stroke=\"#888888\"/>\n";
    svg_body(os, c.locus, c.window, panel, panel, style);
    os << "</svg>\n</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace expcurve
