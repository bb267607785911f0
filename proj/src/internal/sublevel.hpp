#pragma once

#include "normconc/geometry.hpp"

#include <optional>

namespace normconc::detail {

/// Boundary point of {f <= level} on the ray interior + rho * u (rho > 0), found by
/// doubling then bisection; nullopt when the ray never leaves the set.
std::optional<Vector> sublevel_boundary(const SmoothSublevel& s, const Vector& u);

/// Unit outward normal direction of the sublevel set at a boundary point.
Vector sublevel_normal(const SmoothSublevel& s, const Vector& boundary_point);

}  // namespace normconc::detail
