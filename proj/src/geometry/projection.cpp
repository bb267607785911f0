#include "normconc/geometry.hpp"

#include "internal/minnorm.hpp"
#include "internal/qp.hpp"
#include "internal/sphere_search.hpp"
#include "internal/sublevel.hpp"

#include <algorithm>
#include <cmath>

namespace normconc {
namespace {

Vector project_sublevel(const Vector& x, const SmoothSublevel& s) {
  if (s.f(x) <= s.level) return x;
  const Index n = x.size();
  auto objective = [&](const Vector& u) {
    auto b = detail::sublevel_boundary(s, u);
    return b ? -(x - *b).norm() : -kInf;
  };
  const auto starts = detail::standard_starts(n, {x - s.interior}, 2, 0x70726f6aULL);
  const auto r = detail::maximize_on_sphere(n, objective, starts, detail::SphereSearchOptions{});
  return *detail::sublevel_boundary(s, r.direction);
}

}  // namespace

Vector project(const Vector& x, const ConvexBody& body) {
  require_dim(body.dim(), x.size(), "projection");
  if (const auto* b = body.as<Ball>()) {
    const Vector d = x - b->center;
    const double n = d.norm();
    return n <= b->radius ? x : Vector(b->center + (b->radius / n) * d);
  }
  if (const auto* b = body.as<Box>()) return x.cwiseMax(b->lower).cwiseMin(b->upper);
  if (const auto* h = body.as<PointCloudHull>()) {
    std::vector<Vector> shifted;
    shifted.reserve(h->points.size());
    for (const auto& p : h->points) shifted.push_back(p - x);
    return x + detail::min_norm_point(shifted).point;
  }
  if (const auto* p = body.as<HPolytope>()) {
    // reference_point() throws on an empty polytope.
    return detail::project_polyhedron(x, p->normals, p->offsets, body.reference_point()).point;
  }
  return project_sublevel(x, *body.as<SmoothSublevel>());
}

double hausdorff_distance(const Vector& x, const PointSet& set) {
  if (set.empty()) throw Error(ErrorCode::empty_set, "Hausdorff distance to an empty set");
  double best = kInf;
  for (const auto& a : set) {
    require_dim(x.size(), a.size(), "Hausdorff distance");
    best = std::min(best, (x - a).norm());
  }
  return best;
}

double hausdorff_distance(const Vector& x, const ConvexBody& body) { return (x - project(x, body)).norm(); }

}  // namespace normconc
