#include "normconc/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace normconc {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_interval(const Vector& lo, const Vector& hi, const char* what) {
  require_dim(lo.size(), hi.size(), what);
  require_finite(lo, what);
  require_finite(hi, what);
  if ((hi.array() < lo.array()).any()) throw Error(ErrorCode::invalid_argument, std::string(what) + ": upper < lower");
}

struct Counts {
  long hits = 0;
  long failures = 0;
};

// 0 means NORMCONC_THREADS if set, else the hardware concurrency.
int thread_count(int requested, long work) {
  int t = requested;
  if (t <= 0) {
    const char* env = std::getenv("NORMCONC_THREADS");
    t = env ? std::atoi(env) : 0;
  }
  if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
  t = std::clamp(t, 1, 64);
  return static_cast<int>(std::min<long>(t, std::max<long>(1, work / 4096)));
}

// Runs body(i, counts) for i in [0, n) over disjoint index blocks; counts are summed,
// so the result does not depend on the split.
template <class F>
Counts parallel_count(long n, int threads, F body) {
  const int t = thread_count(threads, n);
  std::vector<Counts> partial(static_cast<std::size_t>(t));
  auto run = [&](int k) {
    const long begin = n * k / t;
    const long end = n * (k + 1) / t;
    for (long i = begin; i < end; ++i) body(static_cast<std::uint64_t>(i), partial[static_cast<std::size_t>(k)]);
  };
  if (t == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < t; ++k) pool.emplace_back(run, k);
    for (auto& th : pool) th.join();
  }
  Counts total;
  for (const auto& c : partial) {
    total.hits += c.hits;
    total.failures += c.failures;
  }
  return total;
}

ProductTwoPoint as_two_point(const SamplerLaw& law) {
  if (const auto* h = std::get_if<HammingUniform>(&law)) {
    return ProductTwoPoint{Vector::Constant(h->dim, -1.0), Vector::Constant(h->dim, 1.0), Vector::Constant(h->dim, 0.5)};
  }
  if (const auto* t = std::get_if<ProductTwoPoint>(&law)) return *t;
  throw Error(ErrorCode::invalid_argument, "Talagrand check needs a two-point product sampler");
}

bool in_finite_set(const PointSet& s, const Vector& x) {
  for (const auto& a : s) {
    if ((a - x).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff())) return true;
  }
  return false;
}

}  // namespace

Sampler::Sampler(SamplerSpec spec) : spec_(std::move(spec)) {
  if (spec_.sample_count < 1) throw Error(ErrorCode::invalid_argument, "sample_count must be positive");
  std::visit(overloaded{
                 [&](const ProductUniform& u) {
                   require_interval(u.lower, u.upper, "uniform box");
                   dim_ = u.lower.size();
                 },
                 [&](const HammingUniform& h) {
                   if (h.dim < 1) throw Error(ErrorCode::invalid_argument, "Hamming dimension must be positive");
                   dim_ = h.dim;
                 },
                 [&](const GaussianSampler& g) {
                   dim_ = g.mean.size();
                   require_finite(g.mean, "Gaussian mean");
                   require_dim(dim_, g.covariance.rows(), "Gaussian covariance");
                   require_dim(dim_, g.covariance.cols(), "Gaussian covariance");
                   if (!g.covariance.isApprox(g.covariance.transpose(), 1e-12)) {
                     throw Error(ErrorCode::invalid_argument, "covariance must be symmetric");
                   }
                   Eigen::SelfAdjointEigenSolver<Matrix> es(g.covariance);
                   if (es.eigenvalues().minCoeff() < -1e-10 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff())) {
                     throw Error(ErrorCode::invalid_argument, "covariance must be positive semidefinite");
                   }
                   factor_ = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
                 },
                 [&](const ProductTwoPoint& t) {
                   require_dim(t.a.size(), t.b.size(), "two-point values");
                   require_finite(t.a, "two-point values");
                   require_finite(t.b, "two-point values");
                   require_dim(t.a.size(), t.q.size(), "two-point probabilities");
                   if ((t.q.array() < 0.0).any() || (t.q.array() > 1.0).any() || !t.q.allFinite()) {
                     throw Error(ErrorCode::invalid_argument, "two-point probabilities must lie in [0, 1]");
                   }
                   dim_ = t.a.size();
                 },
                 [&](const ProductEmpiricalMean& e) {
                   require_interval(e.lower, e.upper, "empirical-mean box");
                   require_dim(e.lower.size(), static_cast<Index>(e.sample_counts.size()), "sample counts");
                   for (long m : e.sample_counts) {
                     if (m < 1) throw Error(ErrorCode::invalid_argument, "sample counts must be at least 1");
                   }
                   dim_ = e.lower.size();
                 },
             },
             spec_.law);
  if (dim_ < 1) throw Error(ErrorCode::invalid_argument, "sampler dimension must be positive");
}

Vector Sampler::mean() const {
  return std::visit(overloaded{
                        [](const ProductUniform& u) -> Vector { return 0.5 * (u.lower + u.upper); },
                        [](const HammingUniform& h) -> Vector { return Vector::Zero(h.dim); },
                        [](const GaussianSampler& g) -> Vector { return g.mean; },
                        [](const ProductTwoPoint& t) -> Vector {
                          return (t.a.array() + t.q.array() * (t.b - t.a).array()).matrix();
                        },
                        [](const ProductEmpiricalMean& e) -> Vector { return 0.5 * (e.lower + e.upper); },
                    },
                    spec_.law);
}

Vector Sampler::draw(std::uint64_t index) const {
  CounterRng rng(spec_.seed, index);
  Vector x(dim_);
  std::visit(overloaded{
                 [&](const ProductUniform& u) {
                   for (Index j = 0; j < dim_; ++j) x(j) = u.lower(j) + (u.upper(j) - u.lower(j)) * rng.uniform();
                 },
                 [&](const HammingUniform&) {
                   for (Index j = 0; j < dim_; ++j) x(j) = (rng.next_u64() >> 63) ? 1.0 : -1.0;
                 },
                 [&](const GaussianSampler& g) {
                   Vector z(dim_);
                   for (Index j = 0; j < dim_; ++j) z(j) = rng.normal();
                   x = g.mean + factor_ * z;
                 },
                 [&](const ProductTwoPoint& t) {
                   for (Index j = 0; j < dim_; ++j) x(j) = rng.uniform() < t.q(j) ? t.b(j) : t.a(j);
                 },
                 [&](const ProductEmpiricalMean& e) {
                   for (Index j = 0; j < dim_; ++j) {
                     const long m = e.sample_counts[static_cast<std::size_t>(j)];
                     double s = 0.0;
                     for (long k = 0; k < m; ++k) s += rng.uniform();
                     x(j) = e.lower(j) + (e.upper(j) - e.lower(j)) * s / static_cast<double>(m);
                   }
                 },
             },
             spec_.law);
  return x;
}

std::string Sampler::describe() const {
  std::ostringstream os;
  static const char* names[] = {"product-uniform", "hamming-uniform", "gaussian", "product-two-point",
                                "product-empirical-mean"};
  os << names[spec_.law.index()] << " N=" << dim_ << " seed=" << spec_.seed << " n=" << spec_.sample_count;
  return os.str();
}

ProbabilityEstimate estimate_probability(const SamplerSpec& spec, const Membership& in_set, int threads) {
  if (!in_set) throw Error(ErrorCode::invalid_argument, "membership predicate is empty");
  if (spec.sample_count < 100) throw Error(ErrorCode::invalid_argument, "sample_count must be at least 100");
  const Sampler sampler(spec);
  const Counts c = parallel_count(spec.sample_count, threads, [&](std::uint64_t i, Counts& acc) {
    try {
      if (in_set(sampler.draw(i))) ++acc.hits;
    } catch (...) {
      ++acc.failures;
    }
  });
  ProbabilityEstimate e;
  e.hits = c.hits;
  e.predicate_failures = c.failures;
  e.samples = spec.sample_count - c.failures;
  if (e.samples == 0) throw Error(ErrorCode::internal, "membership predicate failed on every sample");
  const double n = static_cast<double>(e.samples);
  e.estimate = static_cast<double>(e.hits) / n;
  e.standard_error = std::sqrt(e.estimate * (1.0 - e.estimate) / n);
  return e;
}

BoundVerdict verify_bound(const SamplerSpec& spec, const Membership& in_set, const BoundReport& bound, int threads) {
  BoundVerdict v;
  v.estimate = estimate_probability(spec, in_set, threads);
  v.sampler = Sampler(spec).describe();
  v.bound = bound.value;
  v.exponent = bound.exponent;
  v.slack = bound.value - v.estimate.estimate;
  v.pass = v.estimate.estimate <= bound.value + 3.0 * v.estimate.standard_error;
  if (v.estimate.predicate_failures > 0) {
    v.notes = std::to_string(v.estimate.predicate_failures) + " predicate failures excluded";
  }
  return v;
}

TalagrandCheck talagrand_product_check(const SamplerSpec& spec, const PointSet& a, const PointSet& b, int threads) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::empty_set, "Talagrand check needs nonempty sets");
  const ProductTwoPoint law = as_two_point(spec.law);
  const Sampler sampler(spec);
  const Index n = sampler.dim();
  for (const auto& p : a) require_dim(n, p.size(), "set A");
  for (const auto& p : b) require_dim(n, p.size(), "set B");

  TalagrandCheck r;
  r.distance = talagrand_distance(a, b);
  r.rhs = std::exp(-0.25 * r.distance * r.distance);
  if (n <= 20) {
    r.exact = true;
    Vector x(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      double p = 1.0;
      for (Index j = 0; j < n; ++j) {
        const bool hi = (mask >> j) & 1U;
        x(j) = hi ? law.b(j) : law.a(j);
        p *= hi ? law.q(j) : 1.0 - law.q(j);
      }
      // Coinciding values (a_j = b_j) are visited twice with probabilities summing to p.
      if (in_finite_set(a, x)) r.prob_a += p;
      if (in_finite_set(b, x)) r.prob_b += p;
    }
    r.lhs = r.prob_a * r.prob_b;
    r.tolerance = 1e-12;
  } else {
    const auto ea = estimate_probability(spec, [&](const Vector& x) { return in_finite_set(a, x); }, threads);
    const auto eb = estimate_probability(spec, [&](const Vector& x) { return in_finite_set(b, x); }, threads);
    r.prob_a = ea.estimate;
    r.prob_b = eb.estimate;
    r.lhs = r.prob_a * r.prob_b;
    r.tolerance = 3.0 * (r.prob_a * eb.standard_error + r.prob_b * ea.standard_error);
  }
  r.pass = r.lhs <= r.rhs + r.tolerance;
  return r;
}

}  // namespace normconc
