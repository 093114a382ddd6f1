#pragma once

#include <optional>
#include <string>
#include <vector>

#include "expcurve/derivative.hpp"

namespace expcurve {

enum class CheckStatus { pass, warn, fail };

std::string to_string(CheckStatus s);

struct Check {
  std::string id;
  std::string title;
  CheckStatus status = CheckStatus::fail;
  std::string detail;
  double seconds = 0;
};

struct ScoreboardOptions {
  std::optional<AtlasCache> cache;
  int threads = 0;
  /// Curves with a + b <= genus_max_sum go through the full singularity pipeline.
  int genus_max_sum = 5;
  long bound = 1000000;
  unsigned seed = 20240101;
};

/// Genus of C_{a,b} from the singularity pipeline, read from and written back to the cache.
long cached_genus(int a, int b, const std::optional<AtlasCache>& cache, unsigned seed = 20240101);

/// The complete verification suite. Warnings are known misprints and never count as failures.
std::vector<Check> run_scoreboard(const ScoreboardOptions& opt);

std::string scoreboard_to_json(const std::vector<Check>& checks);
std::string scoreboard_to_text(const std::vector<Check>& checks);

}  // namespace expcurve
