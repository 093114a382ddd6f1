#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "expcurve/arith/upoly.hpp"

namespace expcurve {

/// All roots in Q(i) with multiplicities, or nullopt when p does not split over Q(i).
std::optional<std::vector<std::pair<GaussianRational, int>>> gaussian_roots(const UPoly<GaussianRational>& p);

/// All q solutions of c^q = u in Q(i), or nullopt when they do not all lie in Q(i).
std::optional<std::vector<GaussianRational>> gaussian_nth_roots(const GaussianRational& u, int q);

}  // namespace expcurve
