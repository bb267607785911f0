#pragma once

// Moment-generating-function models and Chernoff bounds over half-spaces and convex sets.

#include "normconc/geometry.hpp"
#include "normconc/report.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace normconc {

struct GaussianModel {
  Vector mean;
  Matrix covariance;
};

/// Independent coordinates, the n-th supported on an interval of length L_n. The MGF
/// used is Hoeffding's upper bound exp(<l, m> + sum l_n^2 L_n^2 / 8).
struct BoundedProductModel {
  Vector means;
  Vector interval_lengths;
};

/// Exact MGF of the empirical law of scalar samples.
struct EmpiricalModel {
  std::vector<double> samples;
};

/// Named scalar laws. bernoulli: P[X = b] = q, P[X = a] = 1 - q. point_mass sits at a.
struct ScalarClosedForm {
  enum class Law { rademacher, bernoulli, point_mass };
  Law law = Law::rademacher;
  double a = 0.0;
  double b = 1.0;
  double q = 0.5;
};

class MgfModel {
 public:
  using Data = std::variant<GaussianModel, BoundedProductModel, EmpiricalModel, ScalarClosedForm>;

  static MgfModel gaussian(Vector mean, Matrix covariance);
  static MgfModel bounded_product(Vector means, Vector interval_lengths);
  static MgfModel empirical(std::vector<double> samples);
  static MgfModel rademacher();
  static MgfModel bernoulli(double a, double b, double q);
  static MgfModel point_mass(double a);

  Index dim() const;
  /// Whether log_mgf is the exact cumulant generating function (false for the
  /// Hoeffding upper bound).
  bool exact() const { return !std::holds_alternative<BoundedProductModel>(data_); }
  /// Lambda(l) = log E[exp <l, X>] (or its certified upper bound); may be +inf.
  double log_mgf(const Covector& l) const;
  Vector mean() const;
  /// Atoms and probabilities of a discrete scalar model (empty for the others).
  std::vector<std::pair<double, double>> atoms() const;
  const Data& data() const { return data_; }

 private:
  explicit MgfModel(Data d) : data_(std::move(d)) {}
  Data data_;
};

struct ChernoffOptions {
  bool force_numeric = false;  // skip the closed forms (used to cross-check them)
  SearchOptions search;
};

/// inf_{s >= 0} exp(s <nu, p>) M(-s nu) for H = {x : <nu, x> <= <nu, p>}.
BoundReport chernoff_halfspace(const MgfModel& model, const HalfSpace& h, const ChernoffOptions& options = {});

/// Infimum over unit nu of the half-space bound for the tightest half-space with normal
/// nu containing K.
BoundReport chernoff_convex(const MgfModel& model, const ConvexBody& body, const ChernoffOptions& options = {});

struct LegendreResult {
  double value = 0.0;  // may be +inf
  double argmax = 0.0;  // +-inf when the supremum is approached at infinity
  bool at_infinity = false;
  std::string notes;
};

/// sup_l (l x - Lambda(l)) for a convex scalar Lambda. When the supremum is approached
/// as |l| -> inf with vanishing slope, `limit` (if given) supplies the exact value;
/// otherwise the numerical limit is returned. A divergent supremum gives +inf.
LegendreResult legendre_transform(const std::function<double(double)>& lambda, double x,
                                  const std::function<double(double)>& limit = {});

struct MomentComparison {
  std::vector<double> log_moment_bounds;  // log(theta^-k E[Y^k]), k = 0..k_max
  int best_k = 0;
  double moment_bound = 1.0;      // min over k <= k_max
  double moment_exponent = 0.0;
  double moment_infimum = 1.0;    // inf over all k >= 0
  double moment_infimum_exponent = 0.0;
  double chernoff_bound = 1.0;    // inf_{s >= 0} e^{-s theta} E[e^{s Y}]
  double chernoff_exponent = 0.0;
  double chernoff_s = 0.0;
  bool inequality_holds = true;   // moment_infimum <= chernoff_bound (up to 1e-12)
  std::string notes;
};

/// Compares the best moment bound on P[Y >= theta] with the Chernoff bound for a
/// nonnegative discrete scalar Y (empirical samples or a closed-form law).
MomentComparison moment_vs_chernoff(const MgfModel& model, double theta, int k_max);

}  // namespace normconc
