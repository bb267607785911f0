#pragma once

#include "normconc/types.hpp"

#include <functional>

namespace normconc::detail {

struct NelderMeadResult {
  Vector x;
  double value = 0.0;
  bool converged = false;
  long evaluations = 0;
};

/// Unconstrained Nelder-Mead (adaptive coefficients) from x0 with an axis-aligned
/// initial simplex of edge `step`. Stops when the simplex diameter falls below
/// tol * max(1, |best|) or after max_evals evaluations.
NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0, double step,
                             double tol, long max_evals);

}  // namespace normconc::detail
