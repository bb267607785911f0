#include "normconc/concentration.hpp"

#include "normconc/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace normconc {
namespace {

BoundReport from_distance(const DistanceResult& d, const Vector& mean) {
  BoundReport r;
  r.method = BoundMethod::portmanteau;
  r.converged = d.converged;
  r.degenerate = d.degenerate;
  r.set_exponent(d.distance == kInf ? -kInf : -0.5 * d.distance * d.distance);
  // A mean inside the set is its own witness point.
  r.witness = Witness{d.normal, d.support_point.size() ? d.support_point : mean, 0.0, d.distance};
  if (d.degenerate) r.add_note("Psi vanishes on a separating direction: infinite distance");
  if (!d.converged) r.add_note("normal-distance search did not converge; best value reported");
  return r;
}

void require_model(const Vector& means, Index n, const char* what) {
  require_dim(n, means.size(), what);
  require_finite(means, what);
  if (n == 0) throw Error(ErrorCode::invalid_argument, std::string(what) + ": dimension must be positive");
}

}  // namespace

DiameterSpec::DiameterSpec(std::vector<double> subdiameters) : sub_(std::move(subdiameters)) {
  for (double d : sub_) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw Error(ErrorCode::invalid_argument, "subdiameters must be finite and nonnegative");
    }
  }
}

double DiameterSpec::diameter() const {
  double s = 0.0;
  for (double d : sub_) s += d * d;
  return std::sqrt(s);
}

PsiFunctional gaussian_psi(const GaussianFamily& family) {
  if (family.members.empty()) throw Error(ErrorCode::empty_set, "Gaussian family is empty");
  std::vector<Matrix> forms;
  const Index n = family.members.front().mean.size();
  for (const auto& m : family.members) {
    require_model(m.mean, n, "Gaussian family mean");
    require_dim(n, m.covariance.rows(), "Gaussian family covariance");
    forms.push_back(m.covariance);
  }
  return PsiFunctional::max_of_quadratics(std::move(forms));
}

PsiFunctional cuboid_psi(const CuboidModel& model) {
  require_model(model.means, model.interval_lengths.size(), "cuboid means");
  if ((model.interval_lengths.array() < 0.0).any() || !model.interval_lengths.allFinite()) {
    throw Error(ErrorCode::invalid_argument, "interval lengths must be finite and nonnegative");
  }
  return PsiFunctional::diagonal(model.interval_lengths.cwiseAbs2() / 4.0);
}

PsiFunctional empirical_mean_psi(const EmpiricalMeanModel& model) {
  const Index n = model.diameters.size();
  require_model(model.means, n, "empirical-mean means");
  require_dim(n, static_cast<Index>(model.sample_counts.size()), "sample counts");
  Vector d(n);
  for (Index i = 0; i < n; ++i) {
    const long m = model.sample_counts[static_cast<std::size_t>(i)];
    if (m < 1) throw Error(ErrorCode::invalid_argument, "sample counts must be at least 1");
    if (!(model.diameters(i) >= 0.0) || !std::isfinite(model.diameters(i))) {
      throw Error(ErrorCode::invalid_argument, "diameters must be finite and nonnegative");
    }
    d(i) = model.diameters(i) * model.diameters(i) / (4.0 * static_cast<double>(m));
  }
  return PsiFunctional::diagonal(d);
}

BoundReport portmanteau_bound(const PsiFunctional& psi, const Vector& mean, const ConvexBody& set,
                              const SearchOptions& options) {
  return from_distance(normal_distance(psi, mean, set, options), mean);
}

BoundReport portmanteau_bound(const PsiFunctional& psi, const Vector& mean, const PointSet& set,
                              const SearchOptions& options) {
  return from_distance(normal_distance(psi, mean, set, options), mean);
}

BoundReport gaussian_family_bound(const GaussianFamily& family, const ConvexBody& set, const SearchOptions& options) {
  const auto psi = gaussian_psi(family);
  BoundReport best;
  best.exponent = kInf;
  for (const auto& m : family.members) {
    auto r = portmanteau_bound(psi, m.mean, set, options);
    if (r.exponent > best.exponent || best.exponent == kInf) best = std::move(r);
    if (best.exponent == 0.0) break;
  }
  return best;
}

BoundReport cuboid_bound(const CuboidModel& model, const ConvexBody& set, const SearchOptions& options) {
  return portmanteau_bound(cuboid_psi(model), model.means, set, options);
}

BoundReport empirical_mean_bound(const EmpiricalMeanModel& model, const ConvexBody& set,
                                 const SearchOptions& options) {
  return portmanteau_bound(empirical_mean_psi(model), model.means, set, options);
}

BoundReport mcdiarmid_tail(double mean_f, const DiameterSpec& diameter, double theta, TailSide side) {
  if (std::isnan(mean_f) || std::isnan(theta)) throw Error(ErrorCode::invalid_argument, "NaN input");
  BoundReport r;
  r.method = BoundMethod::mcdiarmid;
  const double gap = std::max(0.0, side == TailSide::lower ? mean_f - theta : theta - mean_f);
  const double d = diameter.diameter();
  if (gap == 0.0) {
    r.set_exponent(0.0);
  } else if (d == 0.0) {
    r.set_exponent(-kInf);
    r.degenerate = true;
    r.add_note("zero diameter: the function is constant");
  } else {
    r.set_exponent(-2.0 * gap * gap / (d * d));
  }
  return r;
}

QuadraticExampleBounds quadratic_example_bounds(int n, double theta) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "N must be at least 1");
  if (!(theta > 0.0) || !std::isfinite(theta)) throw Error(ErrorCode::invalid_argument, "theta must be positive");
  const double rn = std::sqrt(static_cast<double>(n));
  QuadraticExampleBounds out;
  const double m = std::max(0.0, rn / 6.0 - theta / rn);
  out.mcdiarmid.method = BoundMethod::mcdiarmid;
  out.mcdiarmid.set_exponent(-8.0 * m * m);
  const double h = std::max(0.0, rn - std::sqrt(8.0 * theta));
  out.halfspace.method = BoundMethod::portmanteau;
  out.halfspace.set_exponent(-0.5 * h * h);
  return out;
}

BoundReport sublevel_bound(const PsiFunctional& psi, const Vector& mean, const SmoothFunction& f, double theta,
                           const SublevelSearch& search) {
  if (!f.f || !f.gradient) throw Error(ErrorCode::invalid_argument, "sublevel bound needs f and its gradient");
  require_finite(mean, "mean");
  BoundReport r;
  r.method = BoundMethod::portmanteau;

  // Quasiconvexity spot check on random segments around the region of interest.
  {
    std::vector<Vector> anchors{mean};
    for (const auto& p : search.candidates) anchors.push_back(p);
    if (search.interior) anchors.push_back(*search.interior);
    double spread = 1.0;
    for (const auto& a : anchors) spread = std::max(spread, (a - mean).norm());
    CounterRng rng(0x71636f6e76ULL);
    int violations = 0;
    for (int i = 0; i < 100; ++i) {
      auto draw = [&] {
        Vector v = anchors[rng.next_u64() % anchors.size()];
        for (Index j = 0; j < v.size(); ++j) v(j) += spread * rng.normal();
        return v;
      };
      const Vector x = draw();
      const Vector y = draw();
      const double t = rng.uniform();
      const double fx = f.f(x);
      const double fy = f.f(y);
      const double ft = f.f((1.0 - t) * x + t * y);
      if (ft > std::max(fx, fy) + 1e-10 * std::max({1.0, std::abs(fx), std::abs(fy)})) ++violations;
    }
    if (violations > 0) {
      r.add_note("warning: quasiconvexity spot check failed on " + std::to_string(violations) + " of 100 segments");
    }
  }

  if (f.f(mean) <= theta) {
    r.witness = Witness{Covector::Zero(mean.size()), mean, 0.0, 0.0};
    r.add_note("mean lies in the sublevel set");
    return r;
  }

  if (!search.candidates.empty()) {
    bool any_feasible = false;
    bool any_gradient = false;
    double best = kInf;
    Witness w;
    for (const auto& p : search.candidates) {
      require_dim(mean.size(), p.size(), "candidate point");
      if (!(f.f(p) <= theta + kMembershipTol)) continue;
      any_feasible = true;
      const Covector g = f.gradient(p);
      if (!g.allFinite() || g.isZero(0.0)) continue;
      any_gradient = true;
      const double num = std::max(0.0, g.dot(mean - p));
      const double den = psi(g);
      double d = 0.0;
      if (num > 0.0) d = den > 0.0 ? num / den : kInf;
      const double e = d == kInf ? -kInf : -0.5 * d * d;
      if (e < best) {
        best = e;
        w = Witness{den > 0.0 ? Covector(g / den) : g, p, 0.0, d};
      }
    }
    if (!any_feasible) throw Error(ErrorCode::no_candidate, "no candidate point satisfies f(p) <= theta");
    if (!any_gradient) {
      r.degenerate = true;
      r.add_note("gradient vanishes at every candidate; trivial bound");
      return r;
    }
    r.set_exponent(best);
    r.degenerate = best == -kInf;
    r.witness = w;
    return r;
  }

  if (!search.interior) {
    throw Error(ErrorCode::invalid_argument, "sublevel search needs candidate points or an interior point");
  }
  SmoothSublevel s{f.f, f.gradient, theta, *search.interior, "sublevel"};
  const auto body = ConvexBody::sublevel(std::move(s));
  auto out = from_distance(normal_distance(psi, mean, body, search.options), mean);
  if (!r.notes.empty()) out.add_note(r.notes);
  return out;
}

BoundReport orthant_bound(const Vector& margins, const std::vector<DiameterSpec>& diameters,
                          const std::vector<long>& sample_counts) {
  const Index n = margins.size();
  require_dim(n, static_cast<Index>(diameters.size()), "diameters");
  require_dim(n, static_cast<Index>(sample_counts.size()), "sample counts");
  require_finite(margins, "margins");
  BoundReport r;
  r.method = BoundMethod::orthant;
  // log prod_n (1 - t_n), kept in the log domain so that 1 - prod survives.
  double log_keep = 0.0;
  for (Index i = 0; i < n; ++i) {
    const long m = sample_counts[static_cast<std::size_t>(i)];
    if (m < 1) throw Error(ErrorCode::invalid_argument, "sample counts must be at least 1");
    const double a = std::max(0.0, margins(i));
    const double d = diameters[static_cast<std::size_t>(i)].diameter();
    double log_t = 0.0;
    if (a > 0.0) log_t = d > 0.0 ? -2.0 * static_cast<double>(m) * a * a / (d * d) : -kInf;
    log_keep += std::log1p(-std::exp(log_t));
  }
  r.set_exponent(log_keep == -kInf ? 0.0 : std::log(-std::expm1(log_keep)));
  return r;
}

}  // namespace normconc
