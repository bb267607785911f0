#pragma once

#include "normconc/types.hpp"

namespace normconc::detail {

enum class LpStatus { optimal, unbounded, infeasible };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Vector x;
  double value = 0.0;
};

/// maximize c^T x subject to A x <= b, x free. Dense two-phase simplex with
/// Bland's rule; intended for the small systems that describe H-polytopes.
LpResult maximize_linear(const Vector& c, const Matrix& a, const Vector& b);

}  // namespace normconc::detail
