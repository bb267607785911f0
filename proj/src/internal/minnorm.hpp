#pragma once

#include "normconc/types.hpp"

#include <vector>

namespace normconc::detail {

struct MinNormResult {
  Vector point;
  Vector weights;  // barycentric weights over the input points
  bool converged = true;
};

/// Point of minimum Euclidean norm in the convex hull of `points` (Wolfe's algorithm).
MinNormResult min_norm_point(const std::vector<Vector>& points);

}  // namespace normconc::detail
