#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "expcurve/analytic.hpp"
#include "expcurve/birational.hpp"
#include "expcurve/derivative.hpp"
#include "expcurve/elliptic.hpp"
#include "expcurve/errors.hpp"
#include "expcurve/plotting.hpp"
#include "expcurve/scoreboard.hpp"
#include "expcurve/singularities.hpp"
#include "json.hpp"

using namespace expcurve;
using nlohmann::json;

namespace {

enum Exit { ok = 0, usage = 2, mismatch = 3, internal = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string cache_dir;
  std::string format;
  long bound = 1000000;
  unsigned seed = 20240101;
  int threads = 0;
  std::string out;

  AtlasCache cache() const { return AtlasCache(cache_dir); }
  std::string fmt(const std::string& fallback, std::initializer_list<const char*> allowed) const {
    const std::string f = format.empty() ? fallback : format;
    for (const char* a : allowed)
      if (f == a) return f;
    throw UsageError("format '" + f + "' is not available for this command");
  }
};

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot write " + cfg.out);
  f << text;
  std::cerr << "wrote " << cfg.out << '\n';
}

void emit_json(const Config& cfg, const json& j) { emit(cfg, j.dump(2)); }

AffinePoint parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("point must be x,y: " + s);
  try {
    return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("point must be x,y with rational coordinates: " + s);
  }
}

void check_curve_index(int a, int b) {
  if (a < 0 || b < 0 || a + b < 2) throw UsageError("no curve: F_{a,b} needs a, b >= 0 and a + b >= 2");
}

json optional_json(const std::optional<long>& v) { return v ? json(*v) : json(); }

// gen

void cmd_gen(const Config& cfg, int a, int b) {
  check_curve_index(a, b);
  const auto rec = cfg.cache().get_or_compute(a, b);
  const std::string f = cfg.fmt("json", {"json", "text"});
  if (f == "text") {
    emit(cfg, "F_{" + std::to_string(a) + "," + std::to_string(b) + "} = " + to_string(rec.F) + "\ndegree " +
                  std::to_string(rec.degree) + "\n");
    return;
  }
  json j = json::parse(curve_record_to_json(rec));
  j["polynomial"] = to_string(rec.F);
  const auto irr = irreducibility_heuristic(rec.F, cfg.seed);
  j["irreducibility_heuristic"] = {{"passed", irr.passed}, {"detail", irr.detail}, {"certified", false}};
  emit_json(cfg, j);
}

// genus

void cmd_genus(const Config& cfg, int a, int b, const std::string& method) {
  check_curve_index(a, b);
  json j{{"a", a}, {"b", b}, {"method", method}};
  std::optional<long> formula, singular;
  if (method != "singular") {
    formula = genus_formula(a, b);
    j["formula"] = *formula;
    j["formula_exact"] = to_string(genus_formula_exact(a, b));
    if (auto p = printed_mixed_genus(a, b); !p || *p != genus_formula_exact(a, b)) {
      j["printed_formula"] = p ? json(to_string(*p)) : json();
      std::cerr << "WARN: printed genus formula gives " << (p ? to_string(*p) : std::string("no case")) << ", corrected value "
                << to_string(genus_formula_exact(a, b)) << '\n';
    }
    if (a == 0 && b % 2 == 1 && printed_pure_genus(b) != pure_genus_formula(b)) {
      j["printed_pure_formula"] = to_string(printed_pure_genus(b));
      std::cerr << "WARN: printed genus of C_" << b << " is " << to_string(printed_pure_genus(b)) << ", corrected value "
                << to_string(pure_genus_formula(b)) << '\n';
    }
  }
  if (method != "formula") {
    singular = cached_genus(a, b, cfg.cache(), cfg.seed);
    j["singular"] = *singular;
  }
  j["tabulated"] = optional_json(tabulated_genus(a, b));
  const bool match = !(formula && singular) || *formula == *singular;
  j["match"] = match;
  if (cfg.fmt("json", {"json", "text"}) == "text") {
    std::string line = method == "both" ? std::to_string(*formula) + (match ? " = " : " != ") + std::to_string(*singular)
                                        : std::to_string(formula ? *formula : *singular);
    emit(cfg, line + "\n");
  } else {
    emit_json(cfg, j);
  }
  if (!match)
    throw MismatchError("genus mismatch for C_{" + std::to_string(a) + "," + std::to_string(b) +
                        "}: formula " + std::to_string(*formula) + ", singularity analysis " + std::to_string(*singular));
}

// singular

void cmd_singular(const Config& cfg, std::optional<int> a, std::optional<int> b, const std::string& poly) {
  Poly F;
  if (!poly.empty()) {
    try {
      F = parse_poly(poly);
    } catch (const std::exception& e) {
      throw UsageError(std::string("cannot parse polynomial: ") + e.what());
    }
  } else {
    if (!a || !b) throw UsageError("singular needs a and b, or --poly");
    check_curve_index(*a, *b);
    F = cfg.cache().get_or_compute(*a, *b).F;
  }
  cfg.fmt("json", {"json"});
  const auto rep = genus(F, cfg.seed);
  json j = json::parse(genus_report_to_json(rep, a, b));
  j["polynomial"] = to_string(F);
  emit_json(cfg, j);
}

// pipeline

void cmd_pipeline(const Config& cfg, const std::string& point, const std::string& from, const std::string& to) {
  if (!point.empty()) {
    const auto path = transport_path(parse_point(point), from, to);
    json steps = json::array();
    for (const auto& s : path) steps.push_back({{"stage", s.stage}, {"x", to_string(s.point[0])}, {"y", to_string(s.point[1])}});
    cfg.fmt("json", {"json"});
    emit_json(cfg, {{"from", from}, {"to", to}, {"path", steps}});
    return;
  }
  const auto rec = c3_pipeline();
  if (cfg.fmt("json", {"json", "text"}) == "text") {
    std::ostringstream os;
    for (const auto& s : rec.stages) os << s.name << ": " << to_string(s.equation, s.vars) << " = 0\n";
    for (const auto& id : rec.identities) os << (id.holds ? "PASS  " : "FAIL  ") << id.name << ": " << id.statement << '\n';
    os << "E = " << WeierstrassCurve::make(rec.weierstrass[0], rec.weierstrass[1], rec.weierstrass[2],
                                           rec.weierstrass[3], rec.weierstrass[4]).label()
       << '\n';
    emit(cfg, os.str());
  } else {
    emit_json(cfg, json::parse(pipeline_to_json(rec)));
  }
  if (!rec.all_hold()) throw MismatchError("pipeline identity failed");
}

// elliptic

CurvePoint curve_point(const std::string& s) {
  const auto p = parse_point(s);
  return CurvePoint::affine(p[0], p[1]);
}

json torsion_json(const TorsionGroup& t) {
  json pts = json::array(), gens = json::array();
  for (const auto& p : t.points) pts.push_back(to_string(p));
  for (const auto& p : t.generators) gens.push_back(to_string(p));
  return {{"structure", t.structure}, {"description", t.description()}, {"order", t.order()},
          {"generators", gens}, {"points", pts}};
}

void cmd_elliptic(const Config& cfg, const std::string& label, const std::string& op, const std::string& point,
                  const std::string& other) {
  WeierstrassCurve W;
  try {
    W = parse_curve(label);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  cfg.fmt("json", {"json"});
  json j{{"curve", W.label()}, {"op", op}};
  if (op == "invariants") {
    j["invariants"] = json::parse(curve_to_json(W));
  } else if (op == "conductor") {
    const auto c = conductor(W);
    j["conductor"] = to_string(c.N);
    j["local"] = json::array();
    for (const auto& r : c.local) j["local"].push_back(json::parse(reduction_to_json(r)));
  } else if (op == "torsion") {
    j["torsion"] = torsion_json(torsion(W));
  } else if (op == "minimal") {
    j["minimal_model"] = minimal_model(W).label();
    j["is_minimal"] = is_minimal(W);
  } else if (op == "points") {
    const auto pts = integral_points(W, cfg.bound, cfg.threads);
    j["bound"] = cfg.bound;
    j["count"] = pts.size();
    j["points"] = json::array();
    for (const auto& p : pts) j["points"].push_back(to_string(p));
  } else if (op == "certify") {
    if (point.empty()) throw UsageError("certify needs --point x,y");
    const auto c = non_torsion_certificate(W, curve_point(point));
    j["point"] = point;
    j["non_torsion"] = c.non_torsion;
    j["n"] = c.n;
    j["witness"] = to_string(c.witness);
    j["reason"] = c.reason;
  } else if (op == "multiple") {
    if (point.empty()) throw UsageError("multiple needs --point x,y");
    const auto P = curve_point(point);
    if (!on_curve(W, P)) throw UsageError("point is not on the curve");
    j["multiples"] = json::array();
    for (int n = 1; n <= 6; ++n) j["multiples"].push_back(to_string(multiple(W, P, n)));
  } else if (op == "twist") {
    if (other.empty()) throw UsageError("twist needs --other curve");
    WeierstrassCurve Wp;
    try {
      Wp = parse_curve(other);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    const auto d = twist_detect(W, Wp);
    j["other"] = Wp.label();
    j["twist"] = d ? json(to_string(*d)) : json();
  } else {
    throw UsageError("unknown elliptic operation: " + op);
  }
  emit_json(cfg, j);
}

// inflect

void cmd_inflect(const Config& cfg, std::optional<double> c, const std::vector<double>& sweep) {
  if (!sweep.empty()) {
    if (sweep.size() != 3) throw UsageError("--sweep takes lo hi n");
    const auto cs = log_space(sweep[0], sweep[1], static_cast<int>(sweep[2]));
    if (cfg.fmt("csv", {"csv", "json"}) == "csv") {
      emit(cfg, width_sweep_csv(cs));
      return;
    }
    std::vector<double> R, L;
    json rows = json::array();
    for (double v : cs) {
      const auto r = right_width(v), l = left_width(v);
      const auto q = width_ratio(v);
      R.push_back(r.measured);
      L.push_back(l.measured);
      rows.push_back({{"c", v}, {"R_measured", r.measured}, {"R_predicted", r.predicted}, {"L_measured", l.measured},
                      {"L_predicted", l.predicted}, {"ratio", q.ratio}, {"rel_error", q.rel_error}});
    }
    const auto fr = fit_power_law(cs, R), fl = fit_power_law(cs, L);
    emit_json(cfg, {{"rows", rows},
                    {"fit", {{"R_exponent", fr.exponent}, {"R_prefactor", fr.prefactor}, {"L_exponent", fl.exponent},
                             {"L_prefactor", fl.prefactor}}}});
    return;
  }
  if (!c) throw UsageError("inflect needs c or --sweep");
  cfg.fmt("json", {"json"});
  const auto r = inflection_roots(*c);
  json j{{"c", *c}, {"t", r.t}, {"roots", r.roots}, {"bisection_gap", r.bisection_gap}, {"boundary", r.boundary}};
  const double a = std::abs(*c);
  const auto w = *c > 0 ? right_width(a) : left_width(a);
  j["width"] = {{"name", *c > 0 ? "R_c" : "L_c"}, {"measured", w.measured}, {"predicted", w.predicted}, {"rel_error", w.rel_error}};
  if (r.boundary) std::cerr << "WARN: double root at the boundary case c = " << *c << '\n';
  emit_json(cfg, j);
}

// plot, atlas

void cmd_plot(const Config& cfg, std::optional<int> a, std::optional<int> b, const std::string& curve,
              const std::string& poly, const std::string& window, int res) {
  PlotSpec spec;
  std::string title;
  std::optional<Window> w;
  if (!poly.empty()) {
    spec.F = parse_poly(poly);
    title = poly;
  } else if (!curve.empty()) {
    if (curve == "C2" || curve == "C3") {
      const int n = curve == "C2" ? 2 : 3;
      spec.F = cfg.cache().get_or_compute(0, n).F;
    } else if (curve == "Q" || curve == "W" || curve == "E") {
      spec.F = pipeline_stage_equation(curve);
    } else {
      throw UsageError("unknown curve name " + curve + " (C2, C3, Q, W, E)");
    }
    w = default_named_window(curve);
    title = curve;
  } else {
    if (!a || !b) throw UsageError("plot needs a and b, --curve or --poly");
    check_curve_index(*a, *b);
    spec.F = cfg.cache().get_or_compute(*a, *b).F;
    w = default_window(*a, *b);
    title = "C_{" + std::to_string(*a) + "," + std::to_string(*b) + "}";
  }
  spec.window = window.empty() ? w.value_or(Window{}) : parse_window(window);
  spec.resolution = res;
  spec.threads = cfg.threads;
  cfg.fmt("svg", {"svg"});
  SvgStyle style;
  style.title = title;
  emit(cfg, emit_svg(trace_real_locus(spec), spec.window, style));
}

void cmd_atlas(const Config& cfg, int max_a, int max_b, int res) {
  if (max_a < 0 || max_b < 0) throw UsageError("atlas bounds must be nonnegative");
  cfg.fmt("svg", {"svg"});
  const auto cache = cfg.cache();
  const auto cells = build_atlas(max_a, max_b, res, cfg.threads, [&](int a, int b) { return cache.get_or_compute(a, b).F; });
  emit(cfg, emit_atlas_svg(cells, max_a, max_b));
}

// satellite

void cmd_satellite(const Config& cfg, const std::string& g, const std::string& S, const std::string& derivation,
                   int order, bool with_genus) {
  if (order < 1) throw UsageError("--order must be at least 1");
  SatelliteSpec spec;
  try {
    spec.g = parse_rational_function(g);
    spec.S = parse_rational_function(S);
  } catch (const std::exception& e) {
    throw UsageError(std::string("cannot parse satellite data: ") + e.what());
  }
  if (derivation != "x" && derivation != "y") throw UsageError("--derivation must be x or y");
  spec.derivation = derivation == "x" ? Var::x : Var::y;
  spec.order = order + 1;
  cfg.fmt("json", {"json"});
  const auto gs = satellite_prefactor(spec);
  json j{{"g", g}, {"S", S}, {"derivation", derivation}, {"order", order}};
  j["prefactors"] = json::array();
  for (const auto& q : gs) j["prefactors"].push_back(to_string(q));
  const Poly C = satellite_curve(gs.back());
  j["curve"] = to_string(C);
  j["degree"] = C.degree();
  if (with_genus) {
    try {
      j["genus"] = genus(C, cfg.seed).genus;
    } catch (const std::exception& e) {
      j["genus"] = json();
      j["genus_error"] = e.what();
    }
  }
  j["exploratory"] = true;
  emit_json(cfg, j);
}

// paper

void cmd_paper(const Config& cfg, int max_sum) {
  ScoreboardOptions opt;
  opt.cache = cfg.cache();
  opt.threads = cfg.threads;
  opt.bound = cfg.bound;
  opt.seed = cfg.seed;
  opt.genus_max_sum = max_sum;
  const auto checks = run_scoreboard(opt);
  emit(cfg, cfg.fmt("text", {"text", "json"}) == "json" ? scoreboard_to_json(checks) : scoreboard_to_text(checks));
  int failed = 0;
  for (const auto& c : checks)
    if (c.status == CheckStatus::fail) {
      std::cerr << "FAIL " << c.id << ": " << c.detail << '\n';
      ++failed;
    }
  if (failed) throw MismatchError(std::to_string(failed) + " check(s) failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic curves from the derivatives of exp(1/z)", "expcurve"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  const char* env = std::getenv("EXPCURVE_CACHE");
  cfg.cache_dir = env && *env ? env : "./.expcurve";
  app.add_option("--cache", cfg.cache_dir, "Curve cache directory (default $EXPCURVE_CACHE or ./.expcurve)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text", "csv", "svg"}));
  app.add_option("--bound", cfg.bound, "Integral point search bound on |x|")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for random shears and specializations");
  app.add_option("--threads", cfg.threads, "Worker threads (0: hardware concurrency)")->check(CLI::NonNegativeNumber);
  app.add_option("--out", cfg.out, "Write the output to this file instead of stdout");

  int a = 0, b = 0;
  std::optional<int> oa, ob;

  auto* gen = app.add_subcommand("gen", "Normalized curve polynomial F_{a,b}");
  gen->add_option("a", a)->required();
  gen->add_option("b", b)->required();

  std::string method = "both";
  auto* gen_genus = app.add_subcommand("genus", "Genus of C_{a,b}");
  gen_genus->add_option("a", a)->required();
  gen_genus->add_option("b", b)->required();
  gen_genus->add_option("method", method, "formula, singular or both")
      ->check(CLI::IsMember({"formula", "singular", "both"}));

  std::string poly;
  auto* sing = app.add_subcommand("singular", "Singular points, delta invariants and genus");
  sing->add_option("a", oa);
  sing->add_option("b", ob);
  sing->add_option("--poly", poly, "Analyse this polynomial instead of F_{a,b}");

  std::string point, from = "E", to = "C3";
  auto* pipe = app.add_subcommand("pipeline", "C3 -> Q -> W -> E with every identity checked");
  pipe->add_option("--transport", point, "Transport the point x,y along the chain");
  pipe->add_option("--from", from, "Start stage (C3, Q, W, E)");
  pipe->add_option("--to", to, "Target stage (C3, Q, W, E)");

  std::string label, op, other;
  auto* ell = app.add_subcommand("elliptic", "Arithmetic of a Weierstrass curve");
  ell->add_option("curve", label, "[a1,a2,a3,a4,a6] or [a4,a6]")->required();
  ell->add_option("op", op, "invariants, conductor, torsion, minimal, points, certify, multiple, twist")->required();
  ell->add_option("--point", point, "Point x,y");
  ell->add_option("--other", other, "Second curve for twist");

  std::optional<double> c;
  std::vector<double> sweep;
  auto* infl = app.add_subcommand("inflect", "Roots of F_2(c, y) and the widths R_c, L_{-c}");
  infl->add_option("c", c);
  infl->add_option("--sweep", sweep, "lo hi n: log-spaced sweep of c")->expected(3);

  std::string curve, window;
  int res = 256;
  auto* plot = app.add_subcommand("plot", "SVG of the real locus");
  plot->add_option("a", oa);
  plot->add_option("b", ob);
  plot->add_option("--curve", curve, "C2, C3, Q, W or E");
  plot->add_option("--poly", poly, "Plot this polynomial");
  plot->add_option("--window", window, "xmin,xmax,ymin,ymax");
  plot->add_option("--res", res, "Cells per axis (>= 16)")->check(CLI::Range(16, 8192));

  int max_a = 5, max_b = 5, atlas_res = 96;
  auto* atlas = app.add_subcommand("atlas", "Grid of the curves C_{a,b} in one SVG");
  atlas->add_option("max_a", max_a);
  atlas->add_option("max_b", max_b);
  atlas->add_option("--res", atlas_res, "Cells per axis per panel (>= 16)")->check(CLI::Range(16, 4096));

  std::string g = "1", S = "(x^2-y^2)/(x^2+y^2)^2", derivation = "y";
  int order = 3;
  bool no_genus = false;
  auto* sat = app.add_subcommand("satellite", "Generic recursion g_{n+1} = dg_n + g_n dS");
  sat->add_option("--g", g, "Rational function g");
  sat->add_option("--S", S, "Rational function S (default Re(1/z^2))");
  sat->add_option("--derivation", derivation, "x or y");
  sat->add_option("--order", order, "Derivative order");
  sat->add_flag("--no-genus", no_genus, "Skip the genus computation");

  int max_sum = 5;
  auto* paper = app.add_subcommand("paper", "Run the full verification suite and print a scoreboard");
  paper->add_option("--max-sum", max_sum, "Pipeline genus for a+b up to this bound")->check(CLI::Range(2, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Exit::ok : Exit::usage;
  }

  try {
    if (*gen) cmd_gen(cfg, a, b);
    else if (*gen_genus) cmd_genus(cfg, a, b, method);
    else if (*sing) cmd_singular(cfg, oa, ob, poly);
    else if (*pipe) cmd_pipeline(cfg, point, from, to);
    else if (*ell) cmd_elliptic(cfg, label, op, point, other);
    else if (*infl) cmd_inflect(cfg, c, sweep);
    else if (*plot) cmd_plot(cfg, oa, ob, curve, poly, window, res);
    else if (*atlas) cmd_atlas(cfg, max_a, max_b, atlas_res);
    else if (*sat) cmd_satellite(cfg, g, S, derivation, order, !no_genus);
    else if (*paper) cmd_paper(cfg, max_sum);
    return Exit::ok;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::usage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::usage;
  } catch (const MismatchError& e) {
    std::cerr << "mismatch: " << e.what() << '\n';
    return Exit::mismatch;
  } catch (const CertificationError& e) {
    std::cerr << "not certified: " << e.what() << '\n';
    return Exit::mismatch;
  } catch (const InconsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << '\n';
    return Exit::internal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return Exit::internal;
  }
}
