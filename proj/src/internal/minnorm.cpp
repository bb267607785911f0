#include "internal/minnorm.hpp"

#include <algorithm>
#include <cmath>

namespace normconc::detail {
namespace {

// Minimum-norm point of the affine hull of the corral points: solves the bordered
// system [G 1; 1^T 0] [mu; -t] = [0; 1].
Vector affine_min_norm_weights(const std::vector<Vector>& pts, const std::vector<std::size_t>& corral) {
  const auto k = static_cast<Index>(corral.size());
  Matrix sys = Matrix::Zero(k + 1, k + 1);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j <= i; ++j) {
      const double g = pts[corral[static_cast<std::size_t>(i)]].dot(pts[corral[static_cast<std::size_t>(j)]]);
      sys(i, j) = g;
      sys(j, i) = g;
    }
    sys(i, k) = 1.0;
    sys(k, i) = 1.0;
  }
  Vector rhs = Vector::Zero(k + 1);
  rhs(k) = 1.0;
  Vector sol = sys.fullPivLu().solve(rhs);
  return sol.head(k);
}

}  // namespace

MinNormResult min_norm_point(const std::vector<Vector>& points) {
  if (points.empty()) throw Error(ErrorCode::empty_set, "min-norm point of an empty set");
  const Index dim = points.front().size();
  double scale = 0.0;
  for (const auto& p : points) {
    require_dim(dim, p.size(), "min-norm point");
    scale = std::max(scale, p.squaredNorm());
  }
  scale = std::max(scale, 1e-300);
  const double eps = 1e-13;

  std::size_t start = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].squaredNorm() < points[start].squaredNorm()) start = i;
  }
  std::vector<std::size_t> corral{start};
  std::vector<double> lambda{1.0};
  Vector x = points[start];
  bool converged = false;

  for (int major = 0; major < 1000; ++major) {
    std::size_t j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double v = x.dot(points[i]);
      if (v < best) {
        best = v;
        j = i;
      }
    }
    if (x.squaredNorm() - best <= eps * scale ||
        std::find(corral.begin(), corral.end(), j) != corral.end()) {
      converged = true;
      break;
    }
    corral.push_back(j);
    lambda.push_back(0.0);

    for (int minor = 0; minor < 1000; ++minor) {
      Vector mu = affine_min_norm_weights(points, corral);
      if (mu.minCoeff() > eps) {
        for (std::size_t i = 0; i < corral.size(); ++i) lambda[i] = mu(static_cast<Index>(i));
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        const double m = mu(static_cast<Index>(i));
        if (m <= eps) theta = std::min(theta, lambda[i] / (lambda[i] - m));
      }
      for (std::size_t i = 0; i < corral.size(); ++i) {
        lambda[i] = theta * mu(static_cast<Index>(i)) + (1.0 - theta) * lambda[i];
      }
      std::vector<std::size_t> kept;
      std::vector<double> kept_lambda;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        if (lambda[i] > eps) {
          kept.push_back(corral[i]);
          kept_lambda.push_back(lambda[i]);
        }
      }
      corral = std::move(kept);
      lambda = std::move(kept_lambda);
      double total = 0.0;
      for (double l : lambda) total += l;
      for (double& l : lambda) l /= total;
    }
    x = Vector::Zero(dim);
    for (std::size_t i = 0; i < corral.size(); ++i) x += lambda[i] * points[corral[i]];
  }

  MinNormResult result;
  result.point = x;
  result.weights = Vector::Zero(static_cast<Index>(points.size()));
  for (std::size_t i = 0; i < corral.size(); ++i) result.weights(static_cast<Index>(corral[i])) += lambda[i];
  result.converged = converged;
  return result;
}

}  // namespace normconc::detail
