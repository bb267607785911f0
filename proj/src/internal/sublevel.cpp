#include "internal/sublevel.hpp"

#include <cmath>

namespace normconc::detail {

std::optional<Vector> sublevel_boundary(const SmoothSublevel& s, const Vector& u) {
  const double limit = 1e8 * (1.0 + s.interior.norm());
  auto outside = [&](double rho) {
    const double v = s.f(s.interior + rho * u);
    return !(v <= s.level);  // NaN counts as outside
  };
  double lo = 0.0;
  double hi = 1.0;
  while (!outside(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > limit) return std::nullopt;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (outside(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return Vector(s.interior + lo * u);
}

Vector sublevel_normal(const SmoothSublevel& s, const Vector& boundary_point) {
  Vector g = s.gradient(boundary_point);
  const double n = g.norm();
  if (!(n > 0.0) || !g.allFinite()) return Vector::Zero(boundary_point.size());
  return g / n;
}

}  // namespace normconc::detail
