#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "expcurve/arith/ratfunc.hpp"

namespace expcurve {

/// Numerator P with d^a/dx^a d^b/dy^b exp(S) = P / (x^2+y^2)^(2(a+b)) * exp(S), S = x/(x^2+y^2).
struct PrefactorRecord {
  int a = 0;
  int b = 0;
  Poly prefactor;
  int degree = 0;
};

struct CurveRecord {
  int a = 0;
  int b = 0;
  Poly F;
  int degree = 0;
  std::optional<long> genus_formula;
  std::optional<long> genus_computed;
};

/// One differentiation step applied to a prefactor of total order k.
Poly prefactor_step(const Poly& f, int k, Var v);

PrefactorRecord y_prefactor(int n);
/// y-steps first, then x-steps.
PrefactorRecord mixed_prefactor(int a, int b);
/// x-steps first; only used to test that the order does not matter.
PrefactorRecord mixed_prefactor_x_first(int a, int b);

int expected_curve_degree(int a, int b);

/// F_{a,b}: the prefactor with the forced factors y (b odd) and x (a = 0) removed, normalized
/// by content_primitive. Throws std::invalid_argument("no curve") for a + b < 2.
CurveRecord curve_polynomial(int a, int b);

struct IrreducibilityCheck {
  bool passed = false;
  std::string detail;
};

/// Advisory only: squarefreeness over Q[x,y] and of two random specializations y = y0,
/// plus absence of factors x, y, x^2+y^2. Never a proof of irreducibility.
IrreducibilityCheck irreducibility_heuristic(const Poly& F, unsigned seed = 1);

struct SatelliteSpec {
  RationalFunction g{1};
  RationalFunction S;
  Var derivation = Var::y;
  int order = 1;
};

/// g_1 = g, g_{n+1} = d g_n + g_n * dS. The n-th derivative of g exp(S) is g_{n+1} exp(S).
std::vector<RationalFunction> satellite_prefactor(const SatelliteSpec& spec);

/// Numerator of a satellite prefactor with every factor x, y and x^2+y^2 removed, made primitive.
Poly satellite_curve(const RationalFunction& g);

std::string curve_record_to_json(const CurveRecord& rec);
CurveRecord curve_record_from_json(const std::string& text);

/// On-disk cache of CurveRecords, one file curve_a{a}_b{b}.json per curve, written atomically.
class AtlasCache {
 public:
  explicit AtlasCache(std::filesystem::path dir) : dir_(std::move(dir)) {}
  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(int a, int b) const;
  std::optional<CurveRecord> load(int a, int b) const;
  void store(const CurveRecord& rec) const;
  /// Cached record if present and valid, else computes and stores it.
  CurveRecord get_or_compute(int a, int b) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace expcurve
