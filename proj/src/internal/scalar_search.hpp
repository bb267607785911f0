#pragma once

#include <functional>

namespace normconc::detail {

struct ScalarMinimum {
  double argmin = 0.0;
  double value = 0.0;
  bool converged = true;
  bool at_upper_limit = false;  // still decreasing at the largest admissible point
};

/// Golden-section minimization of a unimodal function on [lo, hi]; stops when the
/// bracket width drops below rel_tol * max(1, |midpoint|).
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double rel_tol = 1e-10);

/// Minimizes a convex function on [0, upper_limit]: doubles from s = 1 until the
/// function increases, then refines with golden section.
ScalarMinimum minimize_convex_halfline(const std::function<double(double)>& f, double upper_limit = 1e12,
                                       double rel_tol = 1e-10);

}  // namespace normconc::detail
