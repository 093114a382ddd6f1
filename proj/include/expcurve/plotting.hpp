#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "expcurve/arith/ratfunc.hpp"

namespace expcurve {

struct Window {
  double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
  bool valid() const { return xmin < xmax && ymin < ymax; }
  friend bool operator==(const Window&, const Window&) = default;
};

/// Parses "xmin,xmax,ymin,ymax".
Window parse_window(const std::string& s);

struct PlotSpec {
  Poly F;
  Window window;
  /// Cells along each axis; at least 16.
  int resolution = 256;
  /// Local subdivision factor of the cells touching the origin.
  int origin_refinement = 4;
  int threads = 0;
};

using PlotPoint = std::array<double, 2>;
using Polyline = std::vector<PlotPoint>;

/// F evaluated in doubles: Horner in x for each y-coefficient, then Horner in y, both compensated.
class FloatPoly {
 public:
  explicit FloatPoly(const Poly& F);
  double operator()(double x, double y) const;

 private:
  std::vector<std::vector<double>> rows_;  // rows_[j][i] is the coefficient of x^i y^j
};

/// Marching squares with linear interpolation on cell edges. Deterministic for a fixed spec.
std::vector<Polyline> trace_real_locus(const PlotSpec& spec);

struct SvgStyle {
  int width = 480;
  int height = 480;
  std::string stroke = "#1f3b73";
  double stroke_width = 1.5;
  bool axes = true;
  std::string title;
};

/// SVG 1.1 with one path per polyline. The window maps onto the full canvas.
std::string emit_svg(const std::vector<Polyline>& polylines, const Window& window, const SvgStyle& style = {});

/// Defaults table of plot windows; generic fallback for curves without an entry.
Window default_window(int a, int b);
/// Windows of the derived curves "Q", "W", "E" and of "C3".
std::optional<Window> default_named_window(const std::string& name);

struct AtlasCell {
  int a = 0, b = 0;
  std::optional<long> genus;
  std::vector<Polyline> locus;
  Window window;
};

/// Grid of the curves F_{a,b} with a <= max_a, b <= max_b, a+b >= 2. `source` supplies F_{a,b}
/// (curve_polynomial when empty) and may be called from several threads.
std::vector<AtlasCell> build_atlas(int max_a, int max_b, int resolution = 96, int threads = 0,
                                   const std::function<Poly(int, int)>& source = {});
std::string emit_atlas_svg(const std::vector<AtlasCell>& cells, int max_a, int max_b, int panel = 160);

}  // namespace expcurve
