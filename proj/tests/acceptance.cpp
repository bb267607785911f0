// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria.

#include "normconc/allocation.hpp"
#include "normconc/concentration.hpp"
#include "normconc/normconc.h"
#include "normconc/verification.hpp"
#include "oracles.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace normconc;
using json = nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) detail = what;  // keep the first failure
    pass = pass && cond;
  }
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Runs a command through the shared library; throws on a non-OK status.
std::string run(std::uint64_t seed, const std::string& command, const std::string& request) {
  nc_context* ctx = nullptr;
  if (nc_context_create(seed, &ctx) != NC_OK) throw std::runtime_error("nc_context_create failed");
  char* out = nullptr;
  const nc_status st = nc_run(ctx, command.c_str(), request.c_str(), &out);
  std::string text = out ? out : "";
  std::string err = nc_last_error(ctx);
  nc_text_free(out);
  nc_context_destroy(ctx);
  if (st != NC_OK) throw std::runtime_error(command + ": " + nc_status_name(st) + ": " + err);
  return text;
}

double mcd_closed_form(int n, double theta) {
  const double rn = std::sqrt(static_cast<double>(n));
  const double m = std::max(0.0, rn / 6.0 - theta / rn);
  return -8.0 * m * m;
}

double halfspace_closed_form(int n, double theta) {
  const double h = std::max(0.0, std::sqrt(static_cast<double>(n)) - std::sqrt(8.0 * theta));
  return -0.5 * h * h;
}

// ---------------------------------------------------------------------------------------

Outcome quadratic_sweep() {
  Outcome o;
  for (double theta : {0.25, 0.125}) {
    const auto out = json::parse(run(0, "compare",
                                     json{{"example", "quadratic"}, {"theta", theta}, {"n_max", 100}, {"output", "json"}}
                                         .dump()));
    const auto& rows = out.at("rows");
    o.require(rows.size() == 100, "expected 100 rows");
    for (const auto& row : rows) {
      const int n = row.at("N").get<int>();
      const double mcd = row.at("mcd_exponent").get<double>();
      const double hs = row.at("halfspace_exponent").get<double>();
      o.require(mcd == mcd_closed_form(n, theta), "McDiarmid exponent differs at N=" + std::to_string(n));
      o.require(hs == halfspace_closed_form(n, theta), "half-space exponent differs at N=" + std::to_string(n));
      o.require(row.at("mcd_bound").get<double>() == std::exp(mcd), "McDiarmid bound != exp(exponent)");
      o.require(row.at("halfspace_bound").get<double>() == std::exp(hs), "half-space bound != exp(exponent)");
      if (theta == 0.125 && n >= 16) o.require(hs < mcd, "half-space not sharper at N=" + std::to_string(n));
      // Applicable where at least one bound is nontrivial (N = 1 gives 1 for both).
      if (theta == 0.25 && n <= 4 && (mcd < 0.0 || hs < 0.0)) {
        o.require(mcd < hs, "McDiarmid not sharper at N=" + std::to_string(n));
      }
    }
  }
  if (o.pass) o.detail = "200 rows exact; crossover holds";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  CounterRng rng(20240501);
  const auto e = PsiFunctional::euclidean();
  double worst = 0.0;
  int bodies = 0;
  while (bodies < 50) {
    const int kind = bodies % 4;
    const Index n = 2 + (bodies / 4) % 5;
    const Vector x = 3.0 * oracle::random_unit(rng, n);
    double got = 0.0;
    double want = 0.0;
    if (kind == 0) {
      const Vector c = 0.5 * oracle::random_normal(rng, n);
      const double r = 0.3 + rng.uniform();
      got = normal_distance(e, x, ConvexBody::ball(c, r)).distance;
      want = std::max(0.0, (x - c).norm() - r);
    } else if (kind == 1) {
      const Vector lo = oracle::random_normal(rng, n);
      const Vector hi = lo + (oracle::random_normal(rng, n).array().abs() + 0.2).matrix();
      got = normal_distance(e, x, ConvexBody::box(lo, hi)).distance;
      want = (x - x.cwiseMax(lo).cwiseMin(hi)).norm();
    } else if (kind == 2) {
      Matrix a(6, n);
      Vector b(6);
      std::vector<HalfSpace> hs;
      for (Index i = 0; i < 6; ++i) {
        a.row(i) = oracle::random_unit(rng, n).transpose();
        b(i) = 0.5 + rng.uniform();
        hs.emplace_back(Vector(b(i) * a.row(i).transpose()), Vector(a.row(i).transpose()));
      }
      got = normal_distance(e, x, ConvexBody::polytope(hs)).distance;
      want = oracle::polytope_distance(x, a, b);
    } else {
      std::vector<Vector> pts;
      for (int i = 0; i < 10; ++i) pts.push_back(oracle::random_normal(rng, n));
      got = normal_distance(e, x, ConvexBody::hull(pts)).distance;
      want = oracle::hull_distance(x, pts);
    }
    const double err = std::abs(got - want);
    worst = std::max(worst, err);
    o.require(err <= 1e-6, "body " + std::to_string(bodies) + " (kind " + std::to_string(kind) + ", N=" +
                               std::to_string(n) + ") error " + fmt(err));
    ++bodies;
  }
  if (o.pass) o.detail = "50 bodies, max error " + fmt(worst);
  return o;
}

Outcome mcdiarmid_consistency() {
  Outcome o;
  CounterRng rng(4242);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Index n = 1 + i % 6;
    const Vector l = (oracle::random_normal(rng, n).array().abs() + 0.1).matrix();
    const Vector m = oracle::random_normal(rng, n);
    const Vector nu = oracle::random_normal(rng, n);
    const Vector p = m + 0.7 * oracle::random_normal(rng, n);
    const auto c = cuboid_bound(CuboidModel{m, l}, ConvexBody::halfspace(HalfSpace(p, nu)));
    std::vector<double> sub;
    for (Index k = 0; k < n; ++k) sub.push_back(std::abs(nu(k)) * l(k));
    const auto d = mcdiarmid_tail(nu.dot(m), DiameterSpec(sub), nu.dot(p), TailSide::lower);
    const double err = std::abs(c.value - d.value);
    worst = std::max(worst, err);
    o.require(err <= 1e-10, "half-space " + std::to_string(i) + " differs by " + fmt(err));
  }
  if (o.pass) o.detail = "100 half-spaces, max difference " + fmt(worst);
  return o;
}

// ---------------------------------------------------------------------------------------

struct Scenario {
  std::string name;
  SamplerSpec sampler;
  Membership in_set;
  BoundReport bound;
};

Vector constant(Index n, double v) { return Vector::Constant(n, v); }

Membership inside(ConvexBody body) {
  return [body = std::move(body)](const Vector& x) { return body.contains(x); };
}

std::vector<Scenario> mc_scenarios() {
  std::vector<Scenario> out;
  CounterRng rng(31337);
  std::uint64_t seed = 100;
  const long samples = 1000000;
  auto add = [&](std::string name, SamplerLaw law, Membership in_set, BoundReport bound) {
    out.push_back(Scenario{std::move(name), SamplerSpec{std::move(law), seed++, samples}, std::move(in_set),
                           std::move(bound)});
  };

  // Gaussian half-spaces at Psi-distance r.
  const std::vector<Matrix> covs{Matrix::Identity(1, 1), (Matrix(2, 2) << 2, 0.5, 0.5, 1).finished(),
                                 Vector::LinSpaced(5, 1, 3).asDiagonal()};
  for (const auto& cov : covs) {
    const Index n = cov.rows();
    const Vector mean = 0.3 * oracle::random_normal(rng, n);
    const Vector nu = oracle::random_unit(rng, n);
    const double psi = std::sqrt(nu.dot(cov * nu));
    for (double r : {0.5, 1.0, 2.0}) {
      const HalfSpace h(Vector(mean - r * psi * nu / nu.squaredNorm()), nu);
      const auto body = ConvexBody::halfspace(h);
      add("gaussian N=" + std::to_string(n) + " halfspace r=" + fmt(r), GaussianSampler{mean, cov},
          inside(ConvexBody::halfspace(h)),
          gaussian_family_bound(GaussianFamily{{GaussianModel{mean, cov}}}, body));
    }
  }

  // Balls around corners of the unit cube.
  for (Index n : {2, 3, 5, 8}) {
    for (double radius : {0.5, 0.9}) {
      if (n == 8 && radius == 0.5) continue;
      Vector corner(n);
      for (Index j = 0; j < n; ++j) corner(j) = static_cast<double>(rng.next_u64() & 1U);
      const auto ball = ConvexBody::ball(corner, radius);
      add("unit cube N=" + std::to_string(n) + " corner ball r=" + fmt(radius),
          ProductUniform{Vector::Zero(n), Vector::Ones(n)}, [ball](const Vector& x) { return ball.contains(x); },
          cuboid_bound(CuboidModel{constant(n, 0.5), Vector::Ones(n)}, ball));
    }
  }

  // Hamming cube {-1,+1}^N: intervals of length 2, mean 0.
  for (Index n : {2, 4, 8, 16}) {
    const Vector w = n == 2 ? Vector::Unit(2, 0) : Vector(oracle::random_normal(rng, n).cwiseAbs());
    for (double t : n == 2 ? std::vector<double>{1.0} : std::vector<double>{0.5, 1.5}) {
      const double level = -t * w.norm();
      const HalfSpace h(Vector(level * w / w.squaredNorm()), w);
      add("hamming N=" + std::to_string(n) + " halfspace t=" + fmt(t), HammingUniform{n},
          inside(ConvexBody::halfspace(h)),
          cuboid_bound(CuboidModel{Vector::Zero(n), constant(n, 2.0)}, ConvexBody::halfspace(h)));
    }
  }

  // Q_N(X) <= theta with N = 10, theta = 1/8, X uniform on [-1/2, 1/2]^N.
  {
    const int n = 10;
    const double theta = 0.125;
    const auto b = quadratic_example_bounds(n, theta);
    auto in_q = [n, theta](const Vector& x) { return 0.5 * (x - constant(n, 0.5)).squaredNorm() <= theta; };
    add("Q_N N=10 theta=1/8 McDiarmid", ProductUniform{constant(n, -0.5), constant(n, 0.5)}, in_q, b.mcdiarmid);
    add("Q_N N=10 theta=1/8 half-space", ProductUniform{constant(n, -0.5), constant(n, 0.5)}, in_q, b.halfspace);
  }

  // Two-point products and boxes.
  for (Index n : {2, 3, 4}) {
    Vector q(n);
    for (Index j = 0; j < n; ++j) q(j) = 0.2 + 0.6 * rng.uniform();
    const Vector lo = q + constant(n, 0.15);
    const auto box = ConvexBody::box(lo, constant(n, 2.0));
    add("two-point N=" + std::to_string(n) + " box", ProductTwoPoint{Vector::Zero(n), Vector::Ones(n), q},
        [box](const Vector& x) { return box.contains(x); }, cuboid_bound(CuboidModel{q, Vector::Ones(n)}, box));
  }

  // Empirical means of uniforms.
  for (Index n : {1, 2, 3}) {
    std::vector<long> counts;
    for (Index j = 0; j < n; ++j) counts.push_back(2 + 3 * j);
    const Vector lower = Vector::Zero(n);
    const Vector upper = Vector::LinSpaced(n, 1, 2);
    const Vector mean = 0.5 * upper;
    const Vector nu = Vector::Ones(n);
    const HalfSpace h(Vector(mean + 0.25 * upper), Vector(-nu));
    add("empirical mean N=" + std::to_string(n) + " upper tail", ProductEmpiricalMean{lower, upper, counts},
        inside(ConvexBody::halfspace(h)),
        empirical_mean_bound(EmpiricalMeanModel{mean, upper - lower, counts}, ConvexBody::halfspace(h)));
  }

  // Gaussian family bound on a ball and Chernoff on convex bodies.
  {
    const Matrix cov = (Matrix(2, 2) << 1, 0.3, 0.3, 0.5).finished();
    const auto ball = ConvexBody::ball((Vector(2) << 1.5, 1.0).finished(), 0.7);
    GaussianFamily fam{{GaussianModel{Vector::Zero(2), cov}, GaussianModel{Vector::Zero(2), 1.5 * cov}}};
    add("gaussian family ball", GaussianSampler{Vector::Zero(2), 1.5 * cov},
        [ball](const Vector& x) { return ball.contains(x); }, gaussian_family_bound(fam, ball));
    add("gaussian chernoff ball", GaussianSampler{Vector::Zero(2), cov},
        [ball](const Vector& x) { return ball.contains(x); },
        chernoff_convex(MgfModel::gaussian(Vector::Zero(2), cov), ball));
    const Vector q = (Vector(3) << 0.3, 0.5, 0.7).finished();
    const HalfSpace h(Vector(q + constant(3, 0.2)), Vector(-Vector::Ones(3)));
    add("bounded product chernoff halfspace", ProductTwoPoint{Vector::Zero(3), Vector::Ones(3), q},
        inside(ConvexBody::halfspace(h)),
        chernoff_halfspace(MgfModel::bounded_product(q, Vector::Ones(3)), h));
  }
  return out;
}

Outcome monte_carlo_validity(const std::vector<Scenario>& scenarios, std::string& table) {
  Outcome o;
  o.require(scenarios.size() >= 30, "fewer than 30 scenarios");
  std::ostringstream os;
  int passed = 0;
  for (const auto& s : scenarios) {
    const auto v = verify_bound(s.sampler, s.in_set, s.bound);
    os << "      " << (v.pass ? "ok  " : "FAIL") << ' ' << s.name << ": estimate " << fmt(v.estimate.estimate)
       << " +- " << fmt(v.estimate.standard_error) << ", bound " << fmt(v.bound) << '\n';
    o.require(v.pass, s.name + ": estimate above bound + 3 SE");
    o.require(v.estimate.samples == 1000000, s.name + ": wrong sample count");
    passed += v.pass;
  }
  table = os.str();
  if (o.pass) o.detail = std::to_string(passed) + "/" + std::to_string(scenarios.size()) + " scenarios at 1e6 samples";
  return o;
}

Outcome gaussian_tightness() {
  Outcome o;
  const auto body = ConvexBody::halfspace(HalfSpace(Vector::Constant(1, -2.0), Vector::Ones(1)));
  const auto b = gaussian_family_bound(GaussianFamily{{GaussianModel{Vector::Zero(1), Matrix::Identity(1, 1)}}}, body);
  const double truth = 0.5 * std::erfc(std::sqrt(2.0));
  const double ratio = b.value / truth;
  o.require(std::abs(b.value - std::exp(-2.0)) <= 1e-12, "bound is not e^-2");
  o.require(ratio >= 1.0 && ratio <= 10.0, "ratio " + fmt(ratio) + " outside [1, 10]");
  if (o.pass) o.detail = "bound " + fmt(b.value) + " / Phi(-2) " + fmt(truth) + " = " + fmt(ratio);
  return o;
}

Outcome allocation_optimality() {
  Outcome o;
  CounterRng rng(8080);
  int problems = 0;
  for (; problems < 240; ++problems) {
    const Index n = 1 + static_cast<Index>(rng.next_u64() % 3);
    const long lo = 1 + static_cast<long>(rng.next_u64() % 3);
    const long total = lo * n + static_cast<long>(rng.next_u64() % (61 - lo * n));
    AllocationProblem p;
    p.gradient.resize(n);
    p.margins.resize(n);
    p.diameters.resize(n);
    for (Index i = 0; i < n; ++i) {
      p.gradient(i) = rng.uniform() < 0.1 ? 0.0 : 4.0 * (rng.uniform() - 0.3);
      p.margins(i) = rng.uniform();
      p.diameters(i) = 3.0 * rng.uniform();
    }
    p.total_budget = total;
    p.min_per_coordinate = lo;
    const auto r = optimize_allocation(p);
    std::vector<double> c(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = std::pow(p.gradient(i) * p.diameters(i), 2);
    const auto [best, best_v] = oracle::best_allocation(c, static_cast<int>(total), static_cast<int>(lo));
    double v = 0.0;
    long sum = 0;
    for (Index i = 0; i < n; ++i) {
      sum += r.allocation[static_cast<std::size_t>(i)];
      v += c[static_cast<std::size_t>(i)] / static_cast<double>(r.allocation[static_cast<std::size_t>(i)]);
      o.require(r.allocation[static_cast<std::size_t>(i)] >= lo, "floor violated");
    }
    o.require(sum == total, "budget not spent exactly");
    o.require(v <= best_v * (1.0 + 1e-12), "problem " + std::to_string(problems) + " is suboptimal");
  }
  if (o.pass) o.detail = std::to_string(problems) + " problems (N <= 3, M <= 60) optimal";
  return o;
}

Outcome homogeneity() {
  Outcome o;
  CounterRng rng(1717);
  const auto psi = PsiFunctional::diagonal((Vector(3) << 1, 2, 0.5).finished());
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    PointSet set;
    for (int k = 0; k < 6; ++k) set.push_back(oracle::random_normal(rng, 3));
    const Vector x = 3.0 * oracle::random_unit(rng, 3);
    const double alpha = 0.1 + 5.0 * rng.uniform();
    PointSet scaled;
    for (const auto& p : set) scaled.push_back(alpha * p);
    const double d1 = normal_distance(psi, x, set).distance;
    const double d2 = normal_distance(psi, Vector(alpha * x), scaled).distance;
    const double rel = std::abs(d2 - alpha * d1) / std::max(1.0, alpha * d1);
    worst = std::max(worst, rel);
    o.require(rel <= 1e-6, "normal distance instance " + std::to_string(i) + " off by " + fmt(rel));

    const Vector y = oracle::random_normal(rng, 4);
    PointSet a;
    for (int k = 0; k < 5; ++k) {
      Vector z = oracle::random_normal(rng, 4);
      z(k % 4) = y(k % 4);
      a.push_back(z);
    }
    PointSet a_scaled;
    for (const auto& z : a) a_scaled.push_back(alpha * z);
    o.require(talagrand_distance(Vector(alpha * y), a_scaled) == talagrand_distance(y, a),
              "Talagrand instance " + std::to_string(i) + " not scale invariant");
  }
  if (o.pass) o.detail = "100 + 100 instances; degree-one max rel. error " + fmt(worst) + ", degree-zero exact";
  return o;
}

Outcome legendre_identities() {
  Outcome o;
  auto quad = [](double l) { return 0.5 * l * l; };
  double worst = 0.0;
  for (int i = 0; i <= 600; ++i) {
    const double x = -3.0 + 0.01 * i;
    const double err = std::abs(legendre_transform(quad, x).value - 0.5 * x * x);
    worst = std::max(worst, err);
    o.require(err <= 1e-9, "self-conjugacy fails at x=" + fmt(x));
  }
  std::vector<MgfModel> models{MgfModel::point_mass(0.0), MgfModel::point_mass(1.0), MgfModel::point_mass(2.5)};
  for (double q : {0.1, 0.5, 0.9}) models.push_back(MgfModel::bernoulli(0.0, 1.0, q));
  models.push_back(MgfModel::bernoulli(0.5, 3.0, 0.3));
  CounterRng rng(99);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> s;
    for (int j = 0; j < 3 + k % 7; ++j) s.push_back(4.0 * rng.uniform());
    models.push_back(MgfModel::empirical(s));
  }
  int comparisons = 0;
  for (const auto& m : models) {
    for (double theta : {0.3, 0.9, 1.5, 2.0, 2.8, 4.5}) {
      const auto r = moment_vs_chernoff(m, theta, 40);
      o.require(r.inequality_holds, "moment/Chernoff inequality fails");
      o.require(r.moment_infimum <= r.moment_bound, "moment infimum above the k <= k_max minimum");
      ++comparisons;
    }
  }
  if (o.pass) {
    o.detail = "max conjugacy error " + fmt(worst) + "; " + std::to_string(comparisons) + " moment comparisons hold";
  }
  return o;
}

Outcome sharpness() {
  Outcome o;
  const auto e = PsiFunctional::euclidean();
  double prev = kInf;
  std::string gaps;
  for (Index n : {4, 16, 64, 256}) {
    const double rn = std::sqrt(static_cast<double>(n));
    const auto ball = ConvexBody::ball((rn + 1.0) * Vector::Unit(n, 0), rn);
    const auto r = sharpness_diagnostics(e, Vector::Zero(n), ball, n);
    o.require(std::isfinite(r.log_gap), "log gap undefined at N=" + std::to_string(n));
    o.require(std::abs(r.log_gap) < prev, "|log gap| does not decrease at N=" + std::to_string(n));
    o.require(r.verdict == SharpnessVerdict::plausibly_sharp, "radius-sqrt(N) ball not plausibly sharp");
    prev = std::abs(r.log_gap);
    gaps += (gaps.empty() ? "" : ", ") + fmt(r.log_gap);
  }
  for (Index n : {64, 128, 256}) {
    const auto ball = ConvexBody::ball(2.0 * Vector::Unit(n, 0), 1.0);
    const auto r = sharpness_diagnostics(e, Vector::Zero(n), ball, n);
    o.require(r.verdict == SharpnessVerdict::not_sharp, "fixed-radius ball not flagged at N=" + std::to_string(n));
  }
  if (o.pass) o.detail = "log gaps " + gaps + "; fixed radius not-sharp for N in {64,128,256}";
  return o;
}

// Everything the suite writes, serialized; compared across two runs.
std::string full_suite_outputs(const std::vector<Scenario>& scenarios, int threads) {
  std::ostringstream os;
  for (double theta : {0.25, 0.125}) {
    os << run(0, "compare", json{{"example", "quadratic"}, {"theta", theta}, {"n_max", 100}, {"output", "csv"}}.dump());
  }
  std::vector<std::filesystem::path> fixtures;
  for (const auto& f : std::filesystem::directory_iterator(NORMCONC_FIXTURES_DIR)) {
    if (f.path().extension() == ".json" && f.path().filename().string().rfind("bad_", 0) != 0) {
      fixtures.push_back(f.path());
    }
  }
  std::sort(fixtures.begin(), fixtures.end());
  for (const auto& path : fixtures) {
    std::ifstream in(path);
    json req = json::parse(in);
    const std::string stem = path.stem().string();
    const std::string command = stem.substr(0, stem.find('_'));
    if (command == "compare") continue;
    os << run(3, command, req.dump());
    if (command == "bound" || command == "verify") {
      req["output"] = "csv";
      os << run(3, command, req.dump());
    }
  }
  for (const auto& s : scenarios) {
    const auto est = estimate_probability(s.sampler, s.in_set, threads);
    os << s.name << ',' << est.hits << ',' << exact(est.estimate) << ',' << exact(s.bound.value) << '\n';
  }
  return os.str();
}

Outcome determinism(const std::vector<Scenario>& scenarios) {
  Outcome o;
  const std::string first = full_suite_outputs(scenarios, 1);
  const std::string second = full_suite_outputs(scenarios, 4);
  o.require(first == second, "outputs differ between runs");
  if (o.pass) o.detail = std::to_string(first.size()) + " bytes identical (1 vs 4 sampler threads)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  int failed = 0;
  auto report = [&](int id, const char* name, double budget, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget > 0.0 && secs > budget) {
      o.pass = false;
      o.detail += " (over the " + fmt(budget) + " s budget)";
    }
    std::printf("%s  [%2d] %-28s %8.2f s  %s\n", o.pass ? "PASS" : "FAIL", id, name, secs, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  };

  std::vector<Scenario> scenarios;
  std::string table;
  report(1, "quadratic example sweep", 1.0, quadratic_sweep);
  report(2, "oracle equivalence", 30.0, oracle_equivalence);
  report(3, "McDiarmid consistency", 0.0, mcdiarmid_consistency);
  report(4, "Monte Carlo validity", 120.0, [&] {
    scenarios = mc_scenarios();
    return monte_carlo_validity(scenarios, table);
  });
  if (verbose) std::fputs(table.c_str(), stdout);
  report(5, "Gaussian tightness", 0.0, gaussian_tightness);
  report(6, "allocation optimality", 10.0, allocation_optimality);
  report(7, "homogeneity", 0.0, homogeneity);
  report(8, "Legendre/Chernoff identities", 0.0, legendre_identities);
  report(9, "sharpness diagnostics", 0.0, sharpness);
  report(10, "determinism", 0.0, [&] { return determinism(scenarios); });
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed;
}
