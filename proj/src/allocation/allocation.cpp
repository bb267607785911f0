#include "normconc/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace normconc {
namespace {

void validate(const AllocationProblem& p) {
  const Index n = p.gradient.size();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "allocation problem is empty");
  require_dim(n, p.margins.size(), "margins");
  require_dim(n, p.diameters.size(), "diameters");
  require_finite(p.gradient, "gradient");
  require_finite(p.margins, "margins");
  require_finite(p.diameters, "diameters");
  if ((p.diameters.array() < 0.0).any()) throw Error(ErrorCode::invalid_argument, "diameters must be nonnegative");
  if (p.min_per_coordinate < 1) throw Error(ErrorCode::invalid_argument, "min_per_coordinate must be at least 1");
  if (p.total_budget < 1) throw Error(ErrorCode::invalid_argument, "total budget must be positive");
}

Vector weights(const AllocationProblem& p) {
  return (p.gradient.array() * p.diameters.array()).square().matrix();
}

double objective(const Vector& c, const std::vector<long>& m) {
  double s = 0.0;
  for (Index i = 0; i < c.size(); ++i) s += c(i) / static_cast<double>(m[static_cast<std::size_t>(i)]);
  return s;
}

}  // namespace

BoundReport link_bound(const AllocationProblem& problem, const std::vector<long>& allocation) {
  validate(problem);
  require_dim(problem.gradient.size(), static_cast<Index>(allocation.size()), "allocation");
  for (long m : allocation) {
    if (m < 1) throw Error(ErrorCode::invalid_argument, "allocations must be positive");
  }
  BoundReport r;
  r.method = BoundMethod::link;
  const double num = std::max(0.0, problem.gradient.dot(problem.margins));
  const double den = objective(weights(problem), allocation);
  if (num == 0.0) {
    r.set_exponent(0.0);
  } else if (den == 0.0) {
    r.set_exponent(-kInf);
    r.degenerate = true;
    r.add_note("zero variance proxy with a positive margin");
  } else {
    r.set_exponent(-2.0 * num * num / den);
  }
  return r;
}

AllocationResult optimize_allocation(const AllocationProblem& problem) {
  validate(problem);
  const Index n = problem.gradient.size();
  const long lo = problem.min_per_coordinate;
  if (problem.total_budget < lo * static_cast<long>(n)) {
    throw Error(ErrorCode::infeasible, "budget is below N * min_per_coordinate");
  }
  const Vector c = weights(problem);
  const Vector root = c.cwiseSqrt();
  const double root_sum = root.sum();
  const long spare = problem.total_budget - lo * static_cast<long>(n);

  // Continuous relaxation on top of the floor, then largest remainder.
  std::vector<long> m(static_cast<std::size_t>(n), lo);
  std::vector<double> rem(static_cast<std::size_t>(n), 0.0);
  long used = 0;
  for (Index i = 0; i < n; ++i) {
    const double share = root_sum > 0.0 ? root(i) / root_sum : 1.0 / static_cast<double>(n);
    const double want = std::max(0.0, share * static_cast<double>(problem.total_budget) - static_cast<double>(lo));
    const auto fl = static_cast<long>(std::floor(want));
    m[static_cast<std::size_t>(i)] += fl;
    rem[static_cast<std::size_t>(i)] = want - static_cast<double>(fl);
    used += fl;
  }
  // The floor can push the total over the budget when some shares fall below it.
  while (used > spare) {
    Index worst = -1;
    double loss = kInf;
    for (Index i = 0; i < n; ++i) {
      const long mi = m[static_cast<std::size_t>(i)];
      if (mi <= lo) continue;
      const double d = c(i) / static_cast<double>(mi - 1) - c(i) / static_cast<double>(mi);
      if (d < loss) {
        loss = d;
        worst = i;
      }
    }
    --m[static_cast<std::size_t>(worst)];
    --used;
  }
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return rem[static_cast<std::size_t>(a)] > rem[static_cast<std::size_t>(b)]; });
  for (std::size_t k = 0; used < spare; k = (k + 1) % order.size()) {
    ++m[static_cast<std::size_t>(order[k])];
    ++used;
  }

  // Single-unit transfers: separable convex terms, so a local optimum is global.
  const double noise = 1e-14 * objective(c, m);
  for (;;) {
    double best_gain = noise;
    Index from = -1;
    Index to = -1;
    for (Index j = 0; j < n; ++j) {
      const double mj = static_cast<double>(m[static_cast<std::size_t>(j)]);
      const double add = c(j) / mj - c(j) / (mj + 1.0);
      for (Index i = 0; i < n; ++i) {
        if (i == j || m[static_cast<std::size_t>(i)] <= lo) continue;
        const double mi = static_cast<double>(m[static_cast<std::size_t>(i)]);
        const double gain = add - (c(i) / (mi - 1.0) - c(i) / mi);
        if (gain > best_gain) {
          best_gain = gain;
          from = i;
          to = j;
        }
      }
    }
    if (from < 0) break;
    --m[static_cast<std::size_t>(from)];
    ++m[static_cast<std::size_t>(to)];
  }

  AllocationResult out{m, link_bound(problem, m)};
  return out;
}

}  // namespace normconc
