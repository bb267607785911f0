#pragma once

// Link-formula bound for functions of empirical means and the integer sample
// allocation that minimizes it under a total budget.

#include "normconc/report.hpp"
#include "normconc/types.hpp"

#include <vector>

namespace normconc {

struct AllocationProblem {
  Vector gradient;   // dH/dz_n at the anchor p = E[Z] - alpha
  Vector margins;    // alpha_n
  Vector diameters;  // D[f_n]
  long total_budget = 0;
  long min_per_coordinate = 1;
};

/// exp(-2 (sum g_n alpha_n)_+^2 / sum g_n^2 D_n^2 / M(n)).
BoundReport link_bound(const AllocationProblem& problem, const std::vector<long>& allocation);

struct AllocationResult {
  std::vector<long> allocation;
  BoundReport bound;
};

/// Minimizes sum c_n / M(n), c_n = g_n^2 D_n^2, over integer M summing to the budget with
/// M(n) >= min_per_coordinate. Continuous optimum M(n) ~ sqrt(c_n), largest-remainder
/// rounding, then single-unit transfers until none helps. Ties go to the lower index.
AllocationResult optimize_allocation(const AllocationProblem& problem);

}  // namespace normconc
