#pragma once

#include "normconc/types.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace normconc::detail {

/// Objective to maximize over unit vectors; may return +-inf.
using SphereObjective = std::function<double(const Vector&)>;
/// Proposes candidate directions near a local optimum (e.g. from active-set structure).
using SphereRefiner = std::function<std::vector<Vector>(const Vector&)>;

struct SphereSearchOptions {
  int max_evaluations = 6000;
  double tolerance = 1e-13;
  int refine_rounds = 6;
};

struct SphereSearchResult {
  Vector direction;
  double value = -std::numeric_limits<double>::infinity();
  bool converged = false;
  std::size_t start_index = 0;
  long evaluations = 0;
};

/// Hints (normalized, zero vectors dropped), then +-e_j, then seeded random directions.
std::vector<Vector> standard_starts(Index dim, const std::vector<Vector>& hints, int random_starts,
                                    std::uint64_t seed);

/// Multi-start local search on the unit sphere. Each start runs Nelder-Mead in a
/// tangent-plane chart (restarted until it stops improving), followed by rounds of
/// refiner candidates. The best value wins; ties go to the lowest start index.
SphereSearchResult maximize_on_sphere(Index dim, const SphereObjective& objective,
                                      const std::vector<Vector>& starts, const SphereSearchOptions& options,
                                      const SphereRefiner& refine = {});

}  // namespace normconc::detail
