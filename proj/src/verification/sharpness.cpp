#include "normconc/verification.hpp"

#include "internal/sublevel.hpp"

#include <algorithm>
#include <cmath>

namespace normconc {
namespace {

struct Witnessed {
  Vector p;
  Covector nu;
};

// Orthonormal basis of the complement of g, as columns.
Matrix tangent_basis(const Vector& g) {
  const Index n = g.size();
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - 1);
}

// When the mean lies in K there is no separating witness; use the boundary point
// where the ray from the body's reference point through the mean exits K.
Witnessed boundary_witness(const Vector& mean, const ConvexBody& body) {
  const Index n = mean.size();
  Vector ref = body.reference_point();
  if (const auto* s = body.as<SmoothSublevel>()) ref = s->interior;
  Vector u = mean - ref;
  if (u.norm() <= 1e-12 * std::max(1.0, ref.norm())) u = Vector::Unit(n, 0);
  u.normalize();
  if (const auto* b = body.as<Ball>()) return {b->center + b->radius * u, u};
  if (const auto* s = body.as<SmoothSublevel>()) {
    const auto p = detail::sublevel_boundary(*s, u);
    if (!p) throw Error(ErrorCode::invalid_argument, "sublevel set is unbounded along the witness ray");
    return {*p, detail::sublevel_normal(*s, *p)};
  }
  if (const auto* h = body.as<HPolytope>()) {
    double t = kInf;
    Index arg = -1;
    for (Index i = 0; i < h->normals.rows(); ++i) {
      const double rate = h->normals.row(i).dot(u);
      if (rate <= 0.0) continue;
      const double ti = (h->offsets(i) - h->normals.row(i).dot(ref)) / rate;
      if (ti < t) {
        t = ti;
        arg = i;
      }
    }
    if (arg < 0) throw Error(ErrorCode::invalid_argument, "polytope is unbounded along the witness ray");
    return {ref + t * u, h->normals.row(arg).transpose()};
  }
  throw Error(ErrorCode::invalid_argument, "sharpness diagnostics support balls, polytopes and sublevel sets");
}

void polytope_geometry(const HPolytope& h, const Vector& p, SharpnessReport& r) {
  const Index n = p.size();
  std::vector<Index> active;
  for (Index i = 0; i < h.normals.rows(); ++i) {
    const double scale = h.normals.row(i).norm() * std::max(1.0, p.norm());
    if (h.normals.row(i).dot(p) >= h.offsets(i) - 1e-7 * scale) active.push_back(i);
  }
  if (active.size() != 1) {
    r.interior_ball_radius = 0.0;
    r.curvature_eigenvalues = Vector();
    r.notes = "witness lies on a lower-dimensional face: no interior ball";
    return;
  }
  // Largest ball inside the polytope touching the facet at p.
  const Vector m = h.normals.row(active.front()).transpose().normalized();
  double t = kInf;
  for (Index i = 0; i < h.normals.rows(); ++i) {
    if (i == active.front()) continue;
    const Vector ni = h.normals.row(i).transpose();
    const double rate = ni.norm() - ni.dot(m);
    if (rate <= 1e-15 * ni.norm()) continue;
    t = std::min(t, std::max(0.0, h.offsets(i) - ni.dot(p)) / rate);
  }
  r.interior_ball_radius = t;
  r.curvature_eigenvalues = Vector::Zero(n - 1);
}

bool sublevel_geometry(const SmoothSublevel& s, const Vector& p, SharpnessReport& r) {
  const Index n = p.size();
  const Vector g = s.gradient(p);
  const double gn = g.norm();
  if (!g.allFinite() || !(gn > 0.0)) {
    r.notes = "gradient vanishes or is not finite at the witness";
    return false;
  }
  // Central differences of the gradient, step h = 1e-4 max(1, |p|).
  const double h = 1e-4 * std::max(1.0, p.norm());
  Matrix hess(n, n);
  for (Index j = 0; j < n; ++j) {
    const Vector e = h * Vector::Unit(n, j);
    hess.col(j) = (s.gradient(p + e) - s.gradient(p - e)) / (2.0 * h);
  }
  hess = 0.5 * (hess + hess.transpose()).eval();
  if (!hess.allFinite()) {
    r.notes = "finite-difference Hessian is not finite";
    return false;
  }
  if (n == 1) {
    r.curvature_eigenvalues = Vector();
    r.interior_ball_radius = kInf;
    return true;
  }
  const Matrix t = tangent_basis(g);
  Eigen::SelfAdjointEigenSolver<Matrix> es(t.transpose() * hess * t / (2.0 * gn));
  r.curvature_eigenvalues = es.eigenvalues().reverse();
  const double top = r.curvature_eigenvalues(0);
  r.interior_ball_radius = top > 0.0 ? 1.0 / (2.0 * top) : kInf;
  return true;
}

}  // namespace

const char* to_string(SharpnessVerdict v) noexcept {
  switch (v) {
    case SharpnessVerdict::plausibly_sharp:
      return "plausibly-sharp";
    case SharpnessVerdict::not_sharp:
      return "not-sharp";
    case SharpnessVerdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

SharpnessReport sharpness_diagnostics(const PsiFunctional& psi, const Vector& mean, const ConvexBody& body, Index n,
                                      const SearchOptions& options) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "N must be positive");
  require_dim(n, body.dim(), "body");
  require_dim(n, mean.size(), "mean");
  SharpnessReport r;
  r.eigenvalue_threshold = 1.0 / std::sqrt(4.0 * static_cast<double>(n));

  const auto d = normal_distance(psi, mean, body, options);
  if (d.distance > 0.0 && d.support_point.size() == n && !d.degenerate) {
    r.point = d.support_point;
    r.normal = d.normal;
  } else {
    const auto w = boundary_witness(mean, body);
    r.point = w.p;
    r.normal = w.nu;
  }

  bool ok = true;
  if (const auto* b = body.as<Ball>()) {
    const Vector u = r.normal.normalized();
    r.point = b->center + b->radius * u;
    r.interior_ball_radius = b->radius;
    r.curvature_eigenvalues = Vector::Constant(n - 1, 0.5 / b->radius);
  } else if (const auto* h = body.as<HPolytope>()) {
    polytope_geometry(*h, r.point, r);
  } else if (const auto* s = body.as<SmoothSublevel>()) {
    ok = sublevel_geometry(*s, r.point, r);
  } else {
    throw Error(ErrorCode::invalid_argument, "sharpness diagnostics support balls, polytopes and sublevel sets");
  }

  const double nn = static_cast<double>(n);
  const double neg = std::min(0.0, r.normal.dot(r.point - mean));
  const double nu2 = r.normal.squaredNorm();
  r.log_gap = (nu2 > 0.0 ? 2.0 * neg * neg / (nn * nu2) : 0.0) + std::log(r.interior_ball_radius) - 0.5 * std::log(nn);
  if (!ok) {
    r.verdict = SharpnessVerdict::inconclusive;
    r.log_gap = std::nan("");
    return r;
  }
  const bool curved = r.curvature_eigenvalues.size() > 0 &&
                      r.curvature_eigenvalues(0) > r.eigenvalue_threshold * (1.0 + 1e-6);
  const bool thin = r.interior_ball_radius / std::sqrt(nn) < 0.1;
  r.verdict = curved || thin ? SharpnessVerdict::not_sharp : SharpnessVerdict::plausibly_sharp;
  return r;
}

std::vector<double> log_equivalence_gap(const std::vector<double>& a, const std::vector<double>& b, bool log_domain) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::dimension_mismatch, "sequences must have equal length");
  }
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    double la = a[i];
    double lb = b[i];
    if (!log_domain) {
      if (!(a[i] > 0.0) || !(b[i] > 0.0)) throw Error(ErrorCode::invalid_argument, "entries must be positive");
      la = std::log(a[i]);
      lb = std::log(b[i]);
    } else if (std::isnan(la) || std::isnan(lb) || la == kInf || lb == kInf) {
      throw Error(ErrorCode::invalid_argument, "log entries must be finite or -inf");
    }
    out[i] = (la - lb) / static_cast<double>(i + 1);
  }
  return out;
}

}  // namespace normconc
