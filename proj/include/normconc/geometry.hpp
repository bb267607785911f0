#pragma once

// Half-spaces, convex bodies with support functions, and the distance family used
// throughout the library: Psi-normal distance, Euclidean (Hausdorff) distance,
// weighted Hamming distance and Talagrand's convex distance.

#include "normconc/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace normconc {

/// The closed half-space {x : <nu, x> <= <nu, p>}. nu = 0 denotes the whole space.
struct HalfSpace {
  Vector base_point;
  Covector normal;

  HalfSpace(Vector p, Covector nu);

  Index dim() const { return base_point.size(); }
  double offset() const { return normal.dot(base_point); }
  bool degenerate() const { return normal.isZero(0.0); }
};

bool halfspace_contains(const HalfSpace& h, const Vector& x);

/// A positively 1-homogeneous, nonnegative functional on covectors.
class PsiFunctional {
 public:
  enum class Kind { euclidean, weighted_quadratic, max_of_quadratics, custom };
  using Evaluator = std::function<double(const Covector&)>;

  static PsiFunctional euclidean(Index dim = 0);
  /// Psi(nu) = sqrt(nu^T W nu), W symmetric positive semidefinite.
  static PsiFunctional weighted_quadratic(Matrix w);
  /// Psi(nu) = sqrt(sum_n d_n nu_n^2), d_n >= 0.
  static PsiFunctional diagonal(const Vector& d);
  /// Psi(nu) = max_i sqrt(nu^T W_i nu).
  static PsiFunctional max_of_quadratics(std::vector<Matrix> ws);
  /// Caller guarantees 1-homogeneity and nonnegativity.
  static PsiFunctional custom(Evaluator f, Index dim = 0);

  Kind kind() const { return kind_; }
  /// Fixed dimension, or 0 if the functional accepts any dimension.
  Index dim() const { return dim_; }
  double operator()(const Covector& nu) const;
  /// Quadratic forms backing the functional (empty for euclidean and custom).
  const std::vector<Matrix>& forms() const { return forms_; }

 private:
  PsiFunctional(Kind kind, Index dim) : kind_(kind), dim_(dim) {}

  Kind kind_;
  Index dim_;
  std::vector<Matrix> forms_;
  Evaluator custom_;
};

using ScalarField = std::function<double(const Vector&)>;
using VectorField = std::function<Vector(const Vector&)>;

struct Ball {
  Vector center;
  double radius;
};

struct Box {
  Vector lower;
  Vector upper;
};

/// Closed convex hull of finitely many points.
struct PointCloudHull {
  std::vector<Vector> points;
};

/// Intersection of finitely many closed half-spaces; rows of `normals` are the nu_i,
/// `offsets` the <nu_i, p_i>.
struct HPolytope {
  std::vector<HalfSpace> halfspaces;
  Matrix normals;
  Vector offsets;
};

/// {x : f(x) <= level} for a differentiable quasiconvex f. `interior` must satisfy
/// f(interior) < level; boundary points are located along rays from it.
struct SmoothSublevel {
  ScalarField f;
  VectorField gradient;
  double level;
  Vector interior;
  std::string label;
};

class ConvexBody {
 public:
  enum class Kind { ball, box, hull, polytope, sublevel };

  static ConvexBody ball(Vector center, double radius);
  static ConvexBody box(Vector lower, Vector upper);
  static ConvexBody hull(std::vector<Vector> points);
  static ConvexBody polytope(std::vector<HalfSpace> halfspaces);
  static ConvexBody halfspace(HalfSpace h);
  static ConvexBody sublevel(SmoothSublevel s);

  Index dim() const { return dim_; }
  Kind kind() const { return static_cast<Kind>(data_.index()); }

  template <class T>
  const T* as() const {
    return std::get_if<T>(&data_);
  }

  /// h_K(nu) = sup_{a in K} <nu, a>; +inf in unbounded directions. Throws
  /// ErrorCode::infeasible for an empty polytope.
  double support(const Covector& nu) const;
  /// A maximizer of <nu, .> over K, or nullopt when the supremum is not attained.
  std::optional<Vector> support_point(const Covector& nu) const;
  bool contains(const Vector& x, double tol = kMembershipTol) const;
  /// Some point of K (center, centroid, feasible point or interior point).
  Vector reference_point() const;

 private:
  using Data = std::variant<Ball, Box, PointCloudHull, HPolytope, SmoothSublevel>;
  ConvexBody(Data d, Index dim) : data_(std::move(d)), dim_(dim) {}

  Data data_;
  Index dim_;
};

using PointSet = std::vector<Vector>;

struct NormalCone {
  Vector base_point;
  std::vector<Covector> generators;  // empty at interior points
};

/// Options for the multi-start search over normal directions.
struct SearchOptions {
  int random_starts = -1;  // -1: 2N seeded random starts
  std::uint64_t seed = 0x6e6f726d636f6e63ULL;
  int max_evaluations = 6000;  // per local search
  double tolerance = 1e-13;    // relative simplex size at which a local search stops
};

struct DistanceResult {
  double distance = 0.0;
  Covector normal;       // witness nu, scaled so that Psi(nu) = 1 when Psi(nu) > 0
  Vector support_point;  // witness p with <nu, p> = h_K(nu) (empty if x in K)
  bool converged = true;
  bool degenerate = false;  // positive separation with Psi(nu) = 0
};

struct SetDistanceResult {
  DistanceResult inner;
  Vector nearest;  // the a in A attaining the infimum
};

double distance_to_halfspace(const PsiFunctional& psi, const Vector& x, const HalfSpace& h);

DistanceResult normal_distance(const PsiFunctional& psi, const Vector& x, const ConvexBody& body,
                               const SearchOptions& options = {});
/// Finite sets are replaced by their closed convex hull (same distance).
DistanceResult normal_distance(const PsiFunctional& psi, const Vector& x, const PointSet& set,
                               const SearchOptions& options = {});

/// inf_{a in A} d(a, B). Not symmetric in general.
SetDistanceResult normal_distance_set_to_set(const PsiFunctional& psi, const PointSet& a,
                                             const ConvexBody& b, const SearchOptions& options = {});
SetDistanceResult normal_distance_set_to_set(const PsiFunctional& psi, const ConvexBody& a,
                                             const ConvexBody& b, const SearchOptions& options = {});

NormalCone normal_cone_at(const ConvexBody& polytope, const Vector& p);

double hausdorff_distance(const Vector& x, const PointSet& set);
double hausdorff_distance(const Vector& x, const ConvexBody& body);
/// Euclidean projection of x onto a convex body.
Vector project(const Vector& x, const ConvexBody& body);

double weighted_hamming(const Vector& w, const Vector& x, const Vector& y);

double talagrand_distance(const Vector& x, const PointSet& set);
/// inf_{a in A} d_Tal(a, B).
double talagrand_distance(const PointSet& a, const PointSet& b);

}  // namespace normconc
