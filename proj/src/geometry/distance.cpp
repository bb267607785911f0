#include "normconc/geometry.hpp"

#include "internal/minnorm.hpp"
#include "internal/qp.hpp"
#include "internal/nelder_mead.hpp"
#include "internal/psi_util.hpp"
#include "internal/sphere_search.hpp"
#include "internal/sublevel.hpp"
#include "normconc/random.hpp"

#include <algorithm>
#include <optional>
#include <cmath>

namespace normconc {
namespace {

void check_psi_dim(const PsiFunctional& psi, Index dim) {
  if (psi.dim() != 0) require_dim(psi.dim(), dim, "Psi functional");
}

// (<nu, x> - h)/Psi(nu) with the degenerate conventions; negative values are kept so
// that the search can climb out of non-separating directions.
double separation_ratio(const PsiFunctional& psi, const Covector& nu, double numerator) {
  const double p = psi(nu);
  if (detail::psi_vanishes(psi, nu, p)) {
    if (numerator > kMembershipTol) return kInf;
    return std::min(numerator, 0.0);
  }
  return numerator / p;
}

Matrix null_space(const Matrix& rows, Index dim) {
  if (rows.rows() == 0) return Matrix::Identity(dim, dim);
  Eigen::JacobiSVD<Matrix> svd(rows, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = 1e-9 * std::max(s.size() > 0 ? s(0) : 0.0, 1e-300);
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++rank;
  }
  return svd.matrixV().rightCols(dim - rank);
}

Vector pinv_solve(const Matrix& m, const Vector& y) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const auto& ev = es.eigenvalues();
  const double cut = 1e-12 * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  Vector z = es.eigenvectors().transpose() * y;
  for (Index i = 0; i < z.size(); ++i) z(i) = ev(i) > cut ? z(i) / ev(i) : 0.0;
  return es.eigenvectors() * z;
}

// Candidate normals from the face exposed near u: the optimal normal among those
// orthogonal to the face, for each quadratic form approximating Psi.
class FacePolish {
 public:
  FacePolish(const PsiFunctional& psi, const Vector& x, const ConvexBody& body, std::uint64_t seed)
      : x_(x), body_(body), forms_(detail::polish_forms(psi, x.size())) {
    const Index n = x.size();
    for (Index j = 0; j < n; ++j) {
      dirs_.push_back(Vector::Unit(n, j));
      dirs_.push_back(-Vector::Unit(n, j));
    }
    CounterRng rng(seed, 0x706f6c697368ULL);
    for (Index k = 0; k < n; ++k) {
      Vector v(n);
      for (Index j = 0; j < n; ++j) v(j) = rng.normal();
      dirs_.push_back(v.normalized());
    }
  }

  std::vector<Vector> operator()(const Vector& u) const {
    std::vector<Vector> out;
    const auto a0 = body_.support_point(u);
    if (!a0) return out;
    const Vector y = x_ - *a0;
    const double same = 1e-10 * (1.0 + a0->norm());
    std::vector<Vector> diffs;
    add_candidates(diffs, y, out);
    for (double delta : {1e-8, 1e-6, 1e-4, 1e-2}) {
      const std::size_t before = diffs.size();
      for (const auto& d : dirs_) {
        const auto a = body_.support_point((u + delta * d).normalized());
        if (!a) continue;
        const Vector diff = *a - *a0;
        if (diff.norm() <= same) continue;
        const bool known = std::any_of(diffs.begin(), diffs.end(),
                                       [&](const Vector& e) { return (e - diff).norm() <= same; });
        if (!known) diffs.push_back(diff);
      }
      if (diffs.size() != before) add_candidates(diffs, y, out);
    }
    return out;
  }

 private:
  void add_candidates(const std::vector<Vector>& diffs, const Vector& y, std::vector<Vector>& out) const {
    const Index n = y.size();
    Matrix d(static_cast<Index>(diffs.size()), n);
    for (std::size_t i = 0; i < diffs.size(); ++i) d.row(static_cast<Index>(i)) = diffs[i].transpose();
    const Matrix v = null_space(d, n);
    if (v.cols() == 0) return;
    for (const auto& w : forms_) {
      out.push_back(v * pinv_solve(v.transpose() * w * v, v.transpose() * y));
      Matrix stacked(d.rows() + n, n);
      stacked << d, w;
      const Matrix z = null_space(stacked, n);
      if (z.cols() > 0) out.push_back(z * (z.transpose() * y));
    }
  }

  const Vector& x_;
  const ConvexBody& body_;
  std::vector<Matrix> forms_;
  std::vector<Vector> dirs_;
};

std::vector<Vector> body_hints(const Vector& x, const ConvexBody& body) {
  std::vector<Vector> hints;
  if (const auto* p = body.as<HPolytope>()) {
    hints.push_back(x - body.reference_point());
    for (Index i = 0; i < p->normals.rows(); ++i) hints.push_back(p->normals.row(i).transpose());
  }
  if (const auto* h = body.as<PointCloudHull>()) {
    hints.push_back(x - *std::min_element(h->points.begin(), h->points.end(), [&](const Vector& a, const Vector& b) {
      return (x - a).squaredNorm() < (x - b).squaredNorm();
    }));
  }
  hints.push_back(x - project(x, body));
  return hints;
}

detail::SphereSearchOptions sphere_options(const SearchOptions& o) {
  detail::SphereSearchOptions s;
  s.max_evaluations = o.max_evaluations;
  s.tolerance = o.tolerance;
  return s;
}

DistanceResult finish(const PsiFunctional& psi, const Vector& u, double value, bool converged) {
  DistanceResult r;
  r.converged = converged;
  if (!(value > 0.0)) {
    r.normal = Covector::Zero(u.size());
    return r;
  }
  r.distance = value;
  const double p = psi(u);
  r.degenerate = value == kInf;
  r.normal = r.degenerate || !(p > 0.0) ? Covector(u) : Covector(u / p);
  return r;
}

DistanceResult sublevel_distance(const PsiFunctional& psi, const Vector& x, const SmoothSublevel& s,
                                 const SearchOptions& options) {
  const Index n = x.size();
  auto objective = [&](const Vector& u) {
    const auto b = detail::sublevel_boundary(s, u);
    if (!b) return -kInf;
    const Covector g = s.gradient(*b);
    if (!g.allFinite() || g.norm() == 0.0) return -kInf;
    return separation_ratio(psi, g, g.dot(x - *b));
  };
  const auto starts = detail::standard_starts(n, {x - s.interior}, options.random_starts, options.seed);
  const auto best = detail::maximize_on_sphere(n, objective, starts, sphere_options(options));
  const auto b = detail::sublevel_boundary(s, best.direction);
  DistanceResult r = finish(psi, b ? s.gradient(*b) : best.direction, best.value, best.converged);
  if (r.distance > 0.0 && b) r.support_point = *b;
  return r;
}

// Ball with Psi(nu) = sqrt(nu^T W nu), W positive definite: the distance is the
// W^{-1}-metric distance to the ball. In eigencoordinates of W the nearest point is
// z_i = y_i / (1 + mu w_i) with mu fixed by |z| = R.
std::optional<DistanceResult> quadratic_ball_distance(const PsiFunctional& psi, const Vector& x, const Ball& b) {
  const Index n = x.size();
  Matrix w;
  if (psi.kind() == PsiFunctional::Kind::euclidean) {
    w = Matrix::Identity(n, n);
  } else if (psi.kind() != PsiFunctional::Kind::custom && psi.forms().size() == 1) {
    w = psi.forms().front();
  } else {
    return std::nullopt;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(w);
  const Vector ev = es.eigenvalues();
  if (!(ev.minCoeff() > 1e-12 * ev.maxCoeff())) return std::nullopt;
  const Matrix& v = es.eigenvectors();
  const Vector y = v.transpose() * (x - b.center);
  const double r2 = b.radius * b.radius;
  double mu;
  if (ev.maxCoeff() - ev.minCoeff() <= 1e-15 * ev.maxCoeff()) {
    mu = (y.norm() / b.radius - 1.0) / ev(0);
  } else {
    auto excess = [&](double m) { return (y.array() / (1.0 + m * ev.array())).square().sum() - r2; };
    double lo = 0.0;
    double hi = 1.0 / ev.minCoeff();
    while (excess(hi) > 0.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-17 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (excess(mid) > 0.0 ? lo : hi) = mid;
    }
    mu = 0.5 * (lo + hi);
  }
  const Vector z = (y.array() / (1.0 + mu * ev.array())).matrix();
  const Vector gap = ((y - z).array() / ev.array()).matrix();
  DistanceResult r;
  r.distance = std::sqrt((y - z).dot(gap));
  r.normal = v * gap;
  const double ps = psi(r.normal);
  if (ps > 0.0) r.normal /= ps;
  r.support_point = b.center + b.radius * r.normal.normalized();
  return r;
}

// Psi(nu) = sqrt(nu^T W nu) with W positive definite; W = S^2. In z = S^{-1} y the
// Psi-normal distance is the Euclidean distance, so polyhedra and hulls reduce to a
// projection.
struct Whitening {
  Matrix half;      // S
  Matrix inv_half;  // S^{-1}
};

std::optional<Whitening> whitening(const PsiFunctional& psi, Index n) {
  if (psi.kind() == PsiFunctional::Kind::euclidean) return Whitening{Matrix::Identity(n, n), Matrix::Identity(n, n)};
  if (psi.kind() == PsiFunctional::Kind::custom || psi.forms().size() != 1) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<Matrix> es(psi.forms().front());
  const Vector ev = es.eigenvalues();
  if (!(ev.minCoeff() > 1e-12 * ev.maxCoeff())) return std::nullopt;
  const Matrix& v = es.eigenvectors();
  const Vector root = ev.cwiseSqrt();
  return Whitening{v * root.asDiagonal() * v.transpose(), v * root.cwiseInverse().asDiagonal() * v.transpose()};
}

std::optional<DistanceResult> quadratic_polyhedral_distance(const PsiFunctional& psi, const Vector& x,
                                                            const ConvexBody& body) {
  const Index n = x.size();
  const bool hull = body.as<PointCloudHull>() != nullptr;
  if (!hull && !body.as<Box>() && !body.as<HPolytope>()) return std::nullopt;
  const auto w = whitening(psi, n);
  if (!w) return std::nullopt;
  const Vector xt = w->inv_half * x;
  Vector z;
  bool converged = true;
  if (hull) {
    std::vector<Vector> shifted;
    for (const auto& p : body.as<PointCloudHull>()->points) shifted.push_back(w->inv_half * p - xt);
    const auto mn = detail::min_norm_point(shifted);
    z = xt + mn.point;
    converged = mn.converged;
  } else {
    Matrix a;
    Vector b;
    if (const auto* box = body.as<Box>()) {
      a.resize(2 * n, n);
      a << Matrix::Identity(n, n), -Matrix::Identity(n, n);
      b.resize(2 * n);
      b << box->upper, -box->lower;
    } else {
      a = body.as<HPolytope>()->normals;
      b = body.as<HPolytope>()->offsets;
    }
    const auto pr = detail::project_polyhedron(xt, a * w->half, b, w->inv_half * body.reference_point());
    z = pr.point;
    converged = pr.converged;
  }
  DistanceResult r;
  r.converged = converged;
  r.distance = (xt - z).norm();
  if (!(r.distance > 0.0)) {
    r.distance = 0.0;
    r.normal = Covector::Zero(n);
    return r;
  }
  r.normal = w->inv_half * ((xt - z) / r.distance);
  r.support_point = w->half * z;
  return r;
}

}  // namespace

double distance_to_halfspace(const PsiFunctional& psi, const Vector& x, const HalfSpace& h) {
  require_dim(h.dim(), x.size(), "distance to half-space");
  check_psi_dim(psi, x.size());
  const double numerator = std::max(0.0, h.normal.dot(x - h.base_point));
  if (numerator == 0.0) return 0.0;
  const double p = psi(h.normal);
  return p > 0.0 ? numerator / p : kInf;
}

DistanceResult normal_distance(const PsiFunctional& psi, const Vector& x, const ConvexBody& body,
                               const SearchOptions& options) {
  require_dim(body.dim(), x.size(), "normal distance");
  check_psi_dim(psi, x.size());
  require_finite(x, "query point");
  if (body.contains(x)) {
    DistanceResult r;
    r.normal = Covector::Zero(x.size());
    return r;
  }
  if (const auto* s = body.as<SmoothSublevel>()) return sublevel_distance(psi, x, *s, options);
  if (const auto* b = body.as<Ball>()) {
    if (auto r = quadratic_ball_distance(psi, x, *b)) return *r;
  }
  if (auto r = quadratic_polyhedral_distance(psi, x, body)) return *r;
  if (const auto* p = body.as<HPolytope>(); p && p->halfspaces.size() == 1) {
    // A single half-space has one admissible normal direction.
    const HalfSpace& h = p->halfspaces.front();
    DistanceResult r;
    r.distance = distance_to_halfspace(psi, x, h);
    const double ps = psi(h.normal);
    r.degenerate = r.distance == kInf;
    r.normal = ps > 0.0 ? Covector(h.normal / ps) : h.normal;
    r.support_point = x - (h.normal.dot(x) - h.offset()) / h.normal.squaredNorm() * h.normal;
    return r;
  }

  const Index n = x.size();
  auto objective = [&](const Vector& u) {
    const double h = body.support(u);
    if (h == kInf) return -kInf;
    return separation_ratio(psi, u, u.dot(x) - h);
  };
  auto hints = body_hints(x, body);
  if (psi.kind() == PsiFunctional::Kind::max_of_quadratics) {
    // The exact normal for each form alone is a good start for their maximum.
    for (const auto& w : psi.forms()) {
      if (auto r = quadratic_polyhedral_distance(PsiFunctional::weighted_quadratic(w), x, body); r && r->distance > 0.0) {
        hints.push_back(r->normal);
      }
    }
  }
  const auto starts = detail::standard_starts(n, hints, options.random_starts, options.seed);
  const FacePolish polish(psi, x, body, options.seed);
  const auto best = detail::maximize_on_sphere(n, objective, starts, sphere_options(options), polish);
  DistanceResult r = finish(psi, best.direction, best.value, best.converged);
  if (r.distance > 0.0) {
    if (auto a = body.support_point(best.direction)) r.support_point = *a;
  }
  return r;
}

DistanceResult normal_distance(const PsiFunctional& psi, const Vector& x, const PointSet& set,
                               const SearchOptions& options) {
  return normal_distance(psi, x, ConvexBody::hull(set), options);
}

SetDistanceResult normal_distance_set_to_set(const PsiFunctional& psi, const PointSet& a, const ConvexBody& b,
                                             const SearchOptions& options) {
  if (a.empty()) throw Error(ErrorCode::empty_set, "left set is empty");
  SetDistanceResult best;
  best.inner.distance = kInf;
  for (const auto& p : a) {
    auto r = normal_distance(psi, p, b, options);
    if (r.distance < best.inner.distance) {
      best.inner = std::move(r);
      best.nearest = p;
      if (best.inner.distance == 0.0) break;
    }
  }
  return best;
}

SetDistanceResult normal_distance_set_to_set(const PsiFunctional& psi, const ConvexBody& a, const ConvexBody& b,
                                             const SearchOptions& options) {
  require_dim(a.dim(), b.dim(), "set-to-set distance");
  auto value_at = [&](const Vector& z) { return normal_distance(psi, project(z, a), b, options).distance; };

  std::vector<Vector> seeds{project(b.reference_point(), a), a.reference_point()};
  Vector best_z = seeds.front();
  double best_v = value_at(best_z);
  for (std::size_t i = 1; i < seeds.size() && best_v > 0.0; ++i) {
    const double v = value_at(seeds[i]);
    if (v < best_v) {
      best_v = v;
      best_z = seeds[i];
    }
  }
  bool converged = true;
  if (best_v > 0.0) {
    const double step = 0.1 * std::max(1.0, (b.reference_point() - a.reference_point()).norm());
    const auto nm = detail::nelder_mead(value_at, best_z, step, 1e-10, 400 * (a.dim() + 1));
    if (nm.value < best_v) {
      best_v = nm.value;
      best_z = nm.x;
    }
    converged = nm.converged;
  }
  SetDistanceResult r;
  r.nearest = project(best_z, a);
  r.inner = normal_distance(psi, r.nearest, b, options);
  r.inner.converged = r.inner.converged && converged;
  return r;
}

NormalCone normal_cone_at(const ConvexBody& body, const Vector& p) {
  require_dim(body.dim(), p.size(), "normal cone base point");
  Matrix normals;
  Vector offsets;
  if (const auto* poly = body.as<HPolytope>()) {
    normals = poly->normals;
    offsets = poly->offsets;
  } else if (const auto* box = body.as<Box>()) {
    const Index n = p.size();
    normals.resize(2 * n, n);
    normals << Matrix::Identity(n, n), -Matrix::Identity(n, n);
    offsets.resize(2 * n);
    offsets << box->upper, -box->lower;
  } else {
    throw Error(ErrorCode::invalid_argument, "normal cones are available for polytopes and boxes");
  }
  const Vector residual = normals * p - offsets;
  if ((residual.array() > kMembershipTol).any()) throw Error(ErrorCode::not_in_set, "base point is not in the body");
  NormalCone cone{p, {}};
  for (Index i = 0; i < normals.rows(); ++i) {
    if (std::abs(residual(i)) <= kMembershipTol && !normals.row(i).isZero(0.0)) {
      cone.generators.push_back(normals.row(i).transpose());
    }
  }
  return cone;
}

double weighted_hamming(const Vector& w, const Vector& x, const Vector& y) {
  require_dim(w.size(), x.size(), "Hamming weights");
  require_dim(x.size(), y.size(), "Hamming distance");
  if ((w.array() < 0.0).any()) throw Error(ErrorCode::invalid_argument, "Hamming weights must be nonnegative");
  double d = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    if (x(i) != y(i)) d += w(i);
  }
  return d;
}

// sup over unit w >= 0 of min_a <w, delta(x, a)> equals the norm of the min-norm point
// of conv{delta(x, a)} (minimax over the simplex; the hull lies in the positive orthant).
double talagrand_distance(const Vector& x, const PointSet& set) {
  if (set.empty()) throw Error(ErrorCode::empty_set, "Talagrand distance to an empty set");
  std::vector<Vector> deltas;
  deltas.reserve(set.size());
  for (const auto& a : set) {
    require_dim(x.size(), a.size(), "Talagrand distance");
    deltas.push_back((x.array() != a.array()).cast<double>().matrix());
    if (deltas.back().isZero(0.0)) return 0.0;
  }
  return detail::min_norm_point(deltas).point.norm();
}

double talagrand_distance(const PointSet& a, const PointSet& b) {
  if (a.empty()) throw Error(ErrorCode::empty_set, "left set is empty");
  double best = kInf;
  for (const auto& p : a) best = std::min(best, talagrand_distance(p, b));
  return best;
}

}  // namespace normconc
