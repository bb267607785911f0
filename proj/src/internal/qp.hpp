#pragma once

#include "normconc/types.hpp"

namespace normconc::detail {

struct ProjectionResult {
  Vector point;
  bool converged = true;
};

/// Euclidean projection of x onto {y : A y <= b} by a primal active-set method, started
/// from a feasible point.
ProjectionResult project_polyhedron(const Vector& x, const Matrix& a, const Vector& b, Vector feasible);

}  // namespace normconc::detail
