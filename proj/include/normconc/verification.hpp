#pragma once

// Seeded Monte Carlo checks of the bounds and finite-N sharpness diagnostics.

#include "normconc/geometry.hpp"
#include "normconc/random.hpp"
#include "normconc/report.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace normconc {

/// Independent coordinates, the n-th uniform on [lower_n, upper_n].
struct ProductUniform {
  Vector lower;
  Vector upper;
};

/// Uniform on {-1, +1}^N.
struct HammingUniform {
  Index dim = 0;
};

struct GaussianSampler {
  Vector mean;
  Matrix covariance;
};

/// Independent coordinates with P[X_n = b_n] = q_n, P[X_n = a_n] = 1 - q_n.
struct ProductTwoPoint {
  Vector a;
  Vector b;
  Vector q;
};

/// The n-th coordinate is the mean of sample_counts[n] independent uniforms on
/// [lower_n, upper_n].
struct ProductEmpiricalMean {
  Vector lower;
  Vector upper;
  std::vector<long> sample_counts;
};

using SamplerLaw = std::variant<ProductUniform, HammingUniform, GaussianSampler, ProductTwoPoint, ProductEmpiricalMean>;

struct SamplerSpec {
  SamplerLaw law;
  std::uint64_t seed = 0;
  long sample_count = 1000000;
};

/// Sample i is drawn from its own counter stream (seed, i), so results do not depend on
/// how the index range is split across threads.
class Sampler {
 public:
  explicit Sampler(SamplerSpec spec);

  const SamplerSpec& spec() const { return spec_; }
  Index dim() const { return dim_; }
  Vector mean() const;
  Vector draw(std::uint64_t index) const;
  std::string describe() const;

 private:
  SamplerSpec spec_;
  Index dim_ = 0;
  Matrix factor_;  // Gaussian: covariance = factor * factor^T
};

struct ProbabilityEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  long hits = 0;
  long samples = 0;
  long predicate_failures = 0;  // draws where the predicate threw; excluded from `samples`
};

using Membership = std::function<bool(const Vector&)>;

/// Empirical frequency of A with binomial standard error sqrt(p(1-p)/n).
/// threads = 0 picks the hardware concurrency.
ProbabilityEstimate estimate_probability(const SamplerSpec& sampler, const Membership& in_set, int threads = 0);

struct BoundVerdict {
  ProbabilityEstimate estimate;
  double bound = 1.0;
  double exponent = 0.0;
  double slack = 0.0;  // bound - estimate
  bool pass = false;   // estimate <= bound + 3 SE
  std::string sampler;
  std::string notes;
};

BoundVerdict verify_bound(const SamplerSpec& sampler, const Membership& in_set, const BoundReport& bound,
                          int threads = 0);

struct TalagrandCheck {
  double prob_a = 0.0;
  double prob_b = 0.0;
  double lhs = 0.0;  // P[A] P[B]
  double rhs = 1.0;  // exp(-d_Tal(A, B)^2 / 4)
  double distance = 0.0;
  double tolerance = 0.0;
  bool exact = false;  // probabilities by enumeration rather than sampling
  bool pass = false;
};

/// P[X in A] P[X in B] <= exp(-d_Tal(A, B)^2 / 4) for a two-point product law.
/// Probabilities are enumerated exactly for N <= 20, sampled otherwise.
TalagrandCheck talagrand_product_check(const SamplerSpec& sampler, const PointSet& a, const PointSet& b,
                                       int threads = 0);

enum class SharpnessVerdict { plausibly_sharp, not_sharp, inconclusive };

const char* to_string(SharpnessVerdict v) noexcept;

struct SharpnessReport {
  Vector point;     // witness p on the boundary
  Covector normal;  // witness nu
  double interior_ball_radius = 0.0;
  Vector curvature_eigenvalues;  // descending; boundary ~ <n, x - p> = -sum lambda_i y_i^2
  double eigenvalue_threshold = 0.0;  // (4N)^(-1/2)
  double log_gap = 0.0;
  SharpnessVerdict verdict = SharpnessVerdict::inconclusive;
  std::string notes;
};

/// Interior-ball and curvature conditions at the distance witness. Supports balls,
/// polytopes (flat facets) and smooth sublevel sets (finite-difference Hessian).
SharpnessReport sharpness_diagnostics(const PsiFunctional& psi, const Vector& mean, const ConvexBody& body,
                                      Index n, const SearchOptions& options = {});

/// (1/n) log a_n - (1/n) log b_n for n = 1, 2, ...; with log_domain the inputs are logs.
std::vector<double> log_equivalence_gap(const std::vector<double>& a, const std::vector<double>& b,
                                        bool log_domain = false);

}  // namespace normconc
