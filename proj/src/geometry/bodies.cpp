#include "normconc/geometry.hpp"

#include "internal/linprog.hpp"
#include "internal/minnorm.hpp"
#include "internal/sphere_search.hpp"
#include "internal/sublevel.hpp"

#include <algorithm>
#include <cmath>

namespace normconc {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::dimension_mismatch: return "dimension mismatch";
    case ErrorCode::empty_set: return "empty set";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::not_in_set: return "point not in set";
    case ErrorCode::no_candidate: return "no candidate";
    case ErrorCode::parse_error: return "parse error";
    case ErrorCode::internal: return "internal error";
  }
  return "unknown error";
}

// ---------------------------------------------------------------- half-spaces

HalfSpace::HalfSpace(Vector p, Covector nu) : base_point(std::move(p)), normal(std::move(nu)) {
  require_dim(base_point.size(), normal.size(), "half-space normal");
  require_finite(base_point, "half-space base point");
  require_finite(normal, "half-space normal");
}

bool halfspace_contains(const HalfSpace& h, const Vector& x) {
  require_dim(h.dim(), x.size(), "half-space membership");
  return h.normal.dot(x) <= h.normal.dot(h.base_point);
}

// ------------------------------------------------------------------------ Psi

namespace {

void check_psd(const Matrix& w) {
  if (w.rows() != w.cols() || w.rows() == 0) {
    throw Error(ErrorCode::invalid_argument, "quadratic form must be a nonempty square matrix");
  }
  if (!w.allFinite()) throw Error(ErrorCode::invalid_argument, "quadratic form has non-finite entries");
  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  if ((w - w.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::invalid_argument, "quadratic form must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(w, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10 * scale) {
    throw Error(ErrorCode::invalid_argument, "quadratic form must be positive semidefinite");
  }
}

double quadratic_root(const Matrix& w, const Covector& nu) { return std::sqrt(std::max(0.0, nu.dot(w * nu))); }

}  // namespace

PsiFunctional PsiFunctional::euclidean(Index dim) { return PsiFunctional(Kind::euclidean, dim); }

PsiFunctional PsiFunctional::weighted_quadratic(Matrix w) {
  check_psd(w);
  PsiFunctional p(Kind::weighted_quadratic, w.rows());
  p.forms_.push_back(0.5 * (w + w.transpose()));
  return p;
}

PsiFunctional PsiFunctional::diagonal(const Vector& d) {
  if ((d.array() < 0.0).any() || !d.allFinite()) {
    throw Error(ErrorCode::invalid_argument, "diagonal weights must be finite and nonnegative");
  }
  return weighted_quadratic(d.asDiagonal().toDenseMatrix());
}

PsiFunctional PsiFunctional::max_of_quadratics(std::vector<Matrix> ws) {
  if (ws.empty()) throw Error(ErrorCode::invalid_argument, "max-of-quadratics needs at least one form");
  const Index dim = ws.front().rows();
  PsiFunctional p(Kind::max_of_quadratics, dim);
  for (auto& w : ws) {
    check_psd(w);
    require_dim(dim, w.rows(), "max-of-quadratics form");
    p.forms_.push_back(0.5 * (w + w.transpose()));
  }
  return p;
}

PsiFunctional PsiFunctional::custom(Evaluator f, Index dim) {
  if (!f) throw Error(ErrorCode::invalid_argument, "custom Psi needs an evaluator");
  PsiFunctional p(Kind::custom, dim);
  p.custom_ = std::move(f);
  return p;
}

double PsiFunctional::operator()(const Covector& nu) const {
  if (dim_ != 0) require_dim(dim_, nu.size(), "Psi argument");
  switch (kind_) {
    case Kind::euclidean: return nu.norm();
    case Kind::weighted_quadratic: return quadratic_root(forms_.front(), nu);
    case Kind::max_of_quadratics: {
      double best = 0.0;
      for (const auto& w : forms_) best = std::max(best, quadratic_root(w, nu));
      return best;
    }
    case Kind::custom: return custom_(nu);
  }
  return 0.0;
}

// --------------------------------------------------------------- convex bodies

ConvexBody ConvexBody::ball(Vector center, double radius) {
  require_finite(center, "ball center");
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::invalid_argument, "ball radius must be finite and nonnegative");
  }
  const Index n = center.size();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "ball dimension must be positive");
  return ConvexBody(Ball{std::move(center), radius}, n);
}

ConvexBody ConvexBody::box(Vector lower, Vector upper) {
  require_dim(lower.size(), upper.size(), "box bounds");
  require_finite(lower, "box lower bound");
  require_finite(upper, "box upper bound");
  if (lower.size() == 0) throw Error(ErrorCode::invalid_argument, "box dimension must be positive");
  if ((upper.array() < lower.array()).any()) throw Error(ErrorCode::empty_set, "box has lower > upper");
  const Index n = lower.size();
  return ConvexBody(Box{std::move(lower), std::move(upper)}, n);
}

ConvexBody ConvexBody::hull(std::vector<Vector> points) {
  if (points.empty()) throw Error(ErrorCode::empty_set, "point cloud is empty");
  const Index n = points.front().size();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "point dimension must be positive");
  for (const auto& p : points) {
    require_dim(n, p.size(), "point cloud");
    require_finite(p, "point cloud");
  }
  return ConvexBody(PointCloudHull{std::move(points)}, n);
}

ConvexBody ConvexBody::polytope(std::vector<HalfSpace> halfspaces) {
  if (halfspaces.empty()) throw Error(ErrorCode::invalid_argument, "polytope needs at least one half-space");
  const Index n = halfspaces.front().dim();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "polytope dimension must be positive");
  HPolytope poly;
  poly.normals.resize(static_cast<Index>(halfspaces.size()), n);
  poly.offsets.resize(static_cast<Index>(halfspaces.size()));
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    require_dim(n, halfspaces[i].dim(), "polytope half-space");
    poly.normals.row(static_cast<Index>(i)) = halfspaces[i].normal.transpose();
    poly.offsets(static_cast<Index>(i)) = halfspaces[i].offset();
  }
  poly.halfspaces = std::move(halfspaces);
  return ConvexBody(std::move(poly), n);
}

ConvexBody ConvexBody::halfspace(HalfSpace h) { return polytope({std::move(h)}); }

ConvexBody ConvexBody::sublevel(SmoothSublevel s) {
  if (!s.f || !s.gradient) throw Error(ErrorCode::invalid_argument, "sublevel set needs f and its gradient");
  require_finite(s.interior, "sublevel interior point");
  if (!(s.f(s.interior) < s.level)) {
    throw Error(ErrorCode::invalid_argument, "sublevel interior point must satisfy f(interior) < level");
  }
  const Index n = s.interior.size();
  return ConvexBody(std::move(s), n);
}

namespace {

double sublevel_support(const SmoothSublevel& s, const Covector& nu, Vector* argmax) {
  const Index n = s.interior.size();
  bool unbounded = false;
  auto objective = [&](const Vector& u) {
    auto b = detail::sublevel_boundary(s, u);
    if (!b) {
      if (nu.dot(u) > 0.0) unbounded = true;
      return nu.dot(u) > 0.0 ? kInf : -kInf;
    }
    return nu.dot(*b);
  };
  const auto starts = detail::standard_starts(n, {nu}, 2, 0x737570ULL);
  detail::SphereSearchOptions opts;
  opts.max_evaluations = 3000;
  const auto r = detail::maximize_on_sphere(n, objective, starts, opts);
  if (unbounded || r.value == kInf) return kInf;
  if (argmax != nullptr) *argmax = *detail::sublevel_boundary(s, r.direction);
  return r.value;
}

}  // namespace

double ConvexBody::support(const Covector& nu) const {
  require_dim(dim_, nu.size(), "support function argument");
  return std::visit(
      [&](const auto& body) -> double {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return nu.dot(body.center) + body.radius * nu.norm();
        } else if constexpr (std::is_same_v<T, Box>) {
          double h = 0.0;
          for (Index i = 0; i < nu.size(); ++i) h += nu(i) >= 0.0 ? nu(i) * body.upper(i) : nu(i) * body.lower(i);
          return h;
        } else if constexpr (std::is_same_v<T, PointCloudHull>) {
          double h = -kInf;
          for (const auto& p : body.points) h = std::max(h, nu.dot(p));
          return h;
        } else if constexpr (std::is_same_v<T, HPolytope>) {
          const auto lp = detail::maximize_linear(nu, body.normals, body.offsets);
          if (lp.status == detail::LpStatus::infeasible) {
            throw Error(ErrorCode::infeasible, "polytope is empty (infeasible constraints)");
          }
          return lp.status == detail::LpStatus::unbounded ? kInf : lp.value;
        } else {
          return sublevel_support(body, nu, nullptr);
        }
      },
      data_);
}

std::optional<Vector> ConvexBody::support_point(const Covector& nu) const {
  require_dim(dim_, nu.size(), "support point argument");
  return std::visit(
      [&](const auto& body) -> std::optional<Vector> {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, Ball>) {
          const double n = nu.norm();
          if (n == 0.0) return body.center;
          return Vector(body.center + body.radius * nu / n);
        } else if constexpr (std::is_same_v<T, Box>) {
          Vector a(nu.size());
          for (Index i = 0; i < nu.size(); ++i) a(i) = nu(i) >= 0.0 ? body.upper(i) : body.lower(i);
          return a;
        } else if constexpr (std::is_same_v<T, PointCloudHull>) {
          std::size_t best = 0;
          for (std::size_t i = 1; i < body.points.size(); ++i) {
            if (nu.dot(body.points[i]) > nu.dot(body.points[best])) best = i;
          }
          return body.points[best];
        } else if constexpr (std::is_same_v<T, HPolytope>) {
          const auto lp = detail::maximize_linear(nu, body.normals, body.offsets);
          if (lp.status == detail::LpStatus::infeasible) {
            throw Error(ErrorCode::infeasible, "polytope is empty (infeasible constraints)");
          }
          if (lp.status == detail::LpStatus::unbounded) return std::nullopt;
          return lp.x;
        } else {
          Vector a;
          if (sublevel_support(body, nu, &a) == kInf) return std::nullopt;
          return a;
        }
      },
      data_);
}

bool ConvexBody::contains(const Vector& x, double tol) const {
  require_dim(dim_, x.size(), "membership test");
  return std::visit(
      [&](const auto& body) -> bool {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return (x - body.center).norm() <= body.radius + tol;
        } else if constexpr (std::is_same_v<T, Box>) {
          return ((x.array() >= body.lower.array() - tol) && (x.array() <= body.upper.array() + tol)).all();
        } else if constexpr (std::is_same_v<T, PointCloudHull>) {
          std::vector<Vector> shifted;
          shifted.reserve(body.points.size());
          for (const auto& p : body.points) shifted.push_back(p - x);
          return detail::min_norm_point(shifted).point.norm() <= tol;
        } else if constexpr (std::is_same_v<T, HPolytope>) {
          return ((body.normals * x - body.offsets).array() <= tol).all();
        } else {
          return body.f(x) <= body.level + tol;
        }
      },
      data_);
}

Vector ConvexBody::reference_point() const {
  return std::visit(
      [&](const auto& body) -> Vector {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return body.center;
        } else if constexpr (std::is_same_v<T, Box>) {
          return 0.5 * (body.lower + body.upper);
        } else if constexpr (std::is_same_v<T, PointCloudHull>) {
          Vector c = Vector::Zero(dim_);
          for (const auto& p : body.points) c += p;
          return c / static_cast<double>(body.points.size());
        } else if constexpr (std::is_same_v<T, HPolytope>) {
          // Capped Chebyshev-style center: maximize r s.t. a_i x + r |a_i| <= b_i, r <= 1.
          const Index m = body.normals.rows();
          Matrix a(m + 1, dim_ + 1);
          a.setZero();
          a.topLeftCorner(m, dim_) = body.normals;
          a.topRightCorner(m, 1) = body.normals.rowwise().norm();
          a(m, dim_) = 1.0;
          Vector b(m + 1);
          b.head(m) = body.offsets;
          b(m) = 1.0;
          Vector c = Vector::Zero(dim_ + 1);
          c(dim_) = 1.0;
          const auto lp = detail::maximize_linear(c, a, b);
          if (lp.status != detail::LpStatus::optimal) {
            throw Error(ErrorCode::infeasible, "polytope is empty (infeasible constraints)");
          }
          return lp.x.head(dim_);
        } else {
          return body.interior;
        }
      },
      data_);
}

}  // namespace normconc
