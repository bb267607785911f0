#pragma once

// Concentration bounds exp(-d^2 / 2) built from Psi-normal distances, for Gaussian
// families, bounded product laws (cuboids) and empirical means, plus McDiarmid and
// orthant comparison bounds.

#include "normconc/chernoff.hpp"
#include "normconc/geometry.hpp"
#include "normconc/report.hpp"

#include <utility>
#include <vector>

namespace normconc {

struct GaussianFamily {
  std::vector<GaussianModel> members;
};

/// Independent coordinates with E[X] = means, the n-th on an interval of length L_n.
struct CuboidModel {
  Vector means;
  Vector interval_lengths;
};

/// Empirical means of N independent quantities: the n-th averages M(n) samples of a
/// function with McDiarmid diameter D[f_n].
struct EmpiricalMeanModel {
  Vector means;
  Vector diameters;
  std::vector<long> sample_counts;
};

/// McDiarmid subdiameters D_n[f]; the diameter is always recomputed from them.
class DiameterSpec {
 public:
  explicit DiameterSpec(std::vector<double> subdiameters);
  static DiameterSpec scalar(double diameter) { return DiameterSpec({diameter}); }

  const std::vector<double>& subdiameters() const { return sub_; }
  double diameter() const;

 private:
  std::vector<double> sub_;
};

PsiFunctional gaussian_psi(const GaussianFamily& family);
/// Psi(nu) = sqrt(sum L_n^2 nu_n^2) / 2.
PsiFunctional cuboid_psi(const CuboidModel& model);
/// Psi(nu) = sqrt(sum nu_n^2 D_n^2 / M(n)) / 2.
PsiFunctional empirical_mean_psi(const EmpiricalMeanModel& model);

/// exp(-d(mean, A)^2 / 2) for the Psi-normal distance d.
BoundReport portmanteau_bound(const PsiFunctional& psi, const Vector& mean, const ConvexBody& set,
                              const SearchOptions& options = {});
BoundReport portmanteau_bound(const PsiFunctional& psi, const Vector& mean, const PointSet& set,
                              const SearchOptions& options = {});

/// Uses the max-of-quadratics Psi over member covariances and the member mean nearest to
/// the set.
BoundReport gaussian_family_bound(const GaussianFamily& family, const ConvexBody& set,
                                  const SearchOptions& options = {});
BoundReport cuboid_bound(const CuboidModel& model, const ConvexBody& set, const SearchOptions& options = {});
BoundReport empirical_mean_bound(const EmpiricalMeanModel& model, const ConvexBody& set,
                                 const SearchOptions& options = {});

enum class TailSide { lower, upper };

/// exp(-2 (mean - theta)_+^2 / D^2) for the lower tail, exp(-2 (theta - mean)_+^2 / D^2)
/// for the upper tail. Zero diameter gives 0 past the mean and 1 otherwise.
BoundReport mcdiarmid_tail(double mean_f, const DiameterSpec& diameter, double theta, TailSide side);

struct QuadraticExampleBounds {
  BoundReport mcdiarmid;
  BoundReport halfspace;
};

/// The two closed-form bounds on P[Q_N(X) <= theta] for Q_N(x) = |x - (1/2, ..., 1/2)|^2 / 2
/// and X on [-1/2, 1/2]^N with independent components and mean 0.
QuadraticExampleBounds quadratic_example_bounds(int n, double theta);

struct SmoothFunction {
  ScalarField f;
  VectorField gradient;
};

/// Where to look for the boundary point p in the sublevel bound: an explicit candidate
/// list, or (when empty) a search over the level set along rays from `interior`.
struct SublevelSearch {
  std::vector<Vector> candidates;
  std::optional<Vector> interior;
  SearchOptions options;
};

/// inf over p with f(p) <= theta of exp(-(<grad f(p), mean - p>_+ / Psi(grad f(p)))^2 / 2).
BoundReport sublevel_bound(const PsiFunctional& psi, const Vector& mean, const SmoothFunction& f, double theta,
                           const SublevelSearch& search);

/// 1 - prod_n (1 - exp(-2 M(n) (alpha_n)_+^2 / D[f_n]^2)).
BoundReport orthant_bound(const Vector& margins, const std::vector<DiameterSpec>& diameters,
                          const std::vector<long>& sample_counts);

}  // namespace normconc
