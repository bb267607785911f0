#include "internal/qp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace normconc::detail {

ProjectionResult project_polyhedron(const Vector& x, const Matrix& a_in, const Vector& b_in, Vector feasible) {
  const Index m = a_in.rows();
  const Index n = x.size();
  // Unit rows keep the tolerances meaningful.
  Matrix a = a_in;
  Vector b = b_in;
  for (Index i = 0; i < m; ++i) {
    const double s = a.row(i).norm();
    if (s > 0.0) {
      a.row(i) /= s;
      b(i) /= s;
    }
  }
  Vector y = std::move(feasible);
  const double scale = std::max({1.0, x.norm(), y.norm()});
  const double tol = 1e-13 * scale;
  std::vector<Index> work;
  std::vector<char> in_work(static_cast<std::size_t>(m), 0);
  ProjectionResult out;
  // Each iteration either adds an independent constraint or drops one with a negative
  // multiplier; the cap only guards against cycling on degenerate vertices.
  const int max_iter = 50 * static_cast<int>(m + n) + 100;
  for (int iter = 0; iter < max_iter; ++iter) {
    const Vector g = x - y;
    Vector p = g;
    Vector lambda;
    if (!work.empty()) {
      Matrix aw(static_cast<Index>(work.size()), n);
      for (std::size_t k = 0; k < work.size(); ++k) aw.row(static_cast<Index>(k)) = a.row(work[k]);
      lambda = aw.transpose().colPivHouseholderQr().solve(g);
      p = g - aw.transpose() * lambda;
    }
    if (p.norm() <= tol) {
      if (work.empty() || lambda.minCoeff() >= -tol) {
        out.point = y;
        return out;
      }
      Index drop = 0;
      lambda.minCoeff(&drop);
      in_work[static_cast<std::size_t>(work[static_cast<std::size_t>(drop)])] = 0;
      work.erase(work.begin() + drop);
      continue;
    }
    double alpha = 1.0;
    Index block = -1;
    for (Index i = 0; i < m; ++i) {
      if (in_work[static_cast<std::size_t>(i)]) continue;
      const double ap = a.row(i).dot(p);
      if (ap <= 1e-15 * p.norm()) continue;
      const double t = std::max(0.0, (b(i) - a.row(i).dot(y)) / ap);
      if (t < alpha) {
        alpha = t;
        block = i;
      }
    }
    y += alpha * p;
    if (block >= 0) {
      work.push_back(block);
      in_work[static_cast<std::size_t>(block)] = 1;
    }
  }
  out.point = y;
  out.converged = false;
  return out;
}

}  // namespace normconc::detail
