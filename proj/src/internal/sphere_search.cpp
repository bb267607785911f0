#include "internal/sphere_search.hpp"

#include "normconc/random.hpp"

#include <algorithm>
#include <cmath>

namespace normconc::detail {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Matrix tangent_basis(const Vector& u) {
  const Index n = u.size();
  Eigen::HouseholderQR<Matrix> qr(u);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - 1);
}

struct LocalResult {
  Vector u;
  double value;
  bool converged;
  long evaluations;
  double final_size;
};

// Nelder-Mead (adaptive coefficients) minimizing phi(t) = -F(normalize(u + B t)).
LocalResult nelder_mead_chart(const SphereObjective& objective, const Vector& u, double fu, double step,
                              double tol, int max_evals) {
  const Index n = u.size() - 1;
  const Matrix basis = tangent_basis(u);
  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double gamma = 1.0 + 2.0 / dn;
  const double rho = 0.75 - 1.0 / (2.0 * dn);
  const double sigma = 1.0 - 1.0 / dn;

  long evals = 0;
  auto point_of = [&](const Vector& t) -> Vector { return (u + basis * t).normalized(); };
  auto phi = [&](const Vector& t) {
    ++evals;
    const double v = objective(point_of(t));
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : -v;
  };

  std::vector<Vector> simplex(static_cast<std::size_t>(n + 1), Vector::Zero(n));
  std::vector<double> values(static_cast<std::size_t>(n + 1));
  values[0] = -fu;
  for (Index i = 0; i < n; ++i) {
    simplex[static_cast<std::size_t>(i + 1)](i) = step;
    values[static_cast<std::size_t>(i + 1)] = phi(simplex[static_cast<std::size_t>(i + 1)]);
  }
  std::vector<std::size_t> order(static_cast<std::size_t>(n + 1));

  bool converged = false;
  double size = step;
  while (evals < max_evals) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    if (values[best] == -std::numeric_limits<double>::infinity()) break;

    size = 0.0;
    for (const auto& p : simplex) size = std::max(size, (p - simplex[best]).norm());
    const double anchor = std::max(1.0, simplex[best].norm());
    if (size <= tol * anchor) {
      converged = true;
      break;
    }

    Vector centroid = Vector::Zero(n);
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= dn;

    const Vector xr = centroid + alpha * (centroid - simplex[worst]);
    const double fr = phi(xr);
    if (fr < values[best]) {
      const Vector xe = centroid + gamma * (xr - centroid);
      const double fe = phi(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        values[worst] = fe;
      } else {
        simplex[worst] = xr;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = xr;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const Vector xc = outside ? Vector(centroid + rho * (xr - centroid))
                              : Vector(centroid + rho * (simplex[worst] - centroid));
    const double fc = phi(xc);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = xc;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + sigma * (simplex[i] - simplex[best]);
      values[i] = phi(simplex[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  LocalResult out;
  if (values[best] < -fu) {
    out.u = point_of(simplex[best]);
    out.value = -values[best];
  } else {
    out.u = u;
    out.value = fu;
  }
  out.converged = converged || values[best] == -std::numeric_limits<double>::infinity();
  out.evaluations = evals;
  out.final_size = size;
  return out;
}

LocalResult local_search(const SphereObjective& objective, Vector u, double fu, double step,
                         const SphereSearchOptions& options) {
  long evals = 0;
  bool converged = false;
  for (int restart = 0; restart < 30; ++restart) {
    if (fu == std::numeric_limits<double>::infinity()) {
      converged = true;
      break;
    }
    const int budget = static_cast<int>(std::max<long>(50, options.max_evaluations - evals));
    LocalResult r = nelder_mead_chart(objective, u, fu, step, options.tolerance, budget);
    evals += r.evaluations;
    const double gain = r.value - fu;
    u = r.u;
    fu = r.value;
    if (evals >= options.max_evaluations) break;
    if (r.converged && gain <= 1e-15 * std::max(1.0, std::abs(fu))) {
      converged = true;
      break;
    }
    step = std::max(10.0 * r.final_size, 1e-7);
    step = std::min(step, 0.1);
  }
  return {u, fu, converged, evals, 0.0};
}

}  // namespace

std::vector<Vector> standard_starts(Index dim, const std::vector<Vector>& hints, int random_starts,
                                    std::uint64_t seed) {
  std::vector<Vector> starts;
  for (const auto& h : hints) {
    if (h.size() == dim && h.allFinite() && h.norm() > 0.0) starts.push_back(h.normalized());
  }
  for (Index j = 0; j < dim; ++j) {
    starts.push_back(Vector::Unit(dim, j));
    starts.push_back(-Vector::Unit(dim, j));
  }
  const int n_random = random_starts < 0 ? static_cast<int>(2 * dim) : random_starts;
  CounterRng rng(seed, 0x73706865726573ULL);
  for (int k = 0; k < n_random; ++k) {
    Vector v(dim);
    for (Index j = 0; j < dim; ++j) v(j) = rng.normal();
    if (v.norm() > 0.0) starts.push_back(v.normalized());
  }
  return starts;
}

SphereSearchResult maximize_on_sphere(Index dim, const SphereObjective& objective,
                                      const std::vector<Vector>& starts, const SphereSearchOptions& options,
                                      const SphereRefiner& refine) {
  SphereSearchResult best;
  best.direction = Vector::Unit(dim, 0);
  if (dim == 1) {
    // The unit sphere of R^1 is {+1, -1}.
    for (double sgn : {1.0, -1.0}) {
      Vector u = Vector::Constant(1, sgn);
      const double v = objective(u);
      ++best.evaluations;
      if (v > best.value) {
        best.value = v;
        best.direction = u;
        best.start_index = sgn > 0 ? 0 : 1;
      }
    }
    best.converged = true;
    return best;
  }

  for (std::size_t s = 0; s < starts.size(); ++s) {
    Vector u = starts[s].normalized();
    double fu = objective(u);
    long evals = 1;
    LocalResult r = local_search(objective, u, fu, 0.3, options);
    evals += r.evaluations;
    u = r.u;
    fu = r.value;
    bool converged = r.converged;

    if (refine) {
      for (int round = 0; round < options.refine_rounds && fu < std::numeric_limits<double>::infinity(); ++round) {
        Vector cand_best;
        double cand_value = fu;
        for (const auto& c : refine(u)) {
          if (c.size() != dim || !c.allFinite() || c.norm() == 0.0) continue;
          const Vector cu = c.normalized();
          const double v = objective(cu);
          ++evals;
          if (v > cand_value) {
            cand_value = v;
            cand_best = cu;
          }
        }
        if (cand_best.size() == 0) break;
        LocalResult rr = local_search(objective, cand_best, cand_value, 1e-4, options);
        evals += rr.evaluations;
        u = rr.u;
        fu = rr.value;
        converged = converged || rr.converged;
      }
    }

    best.evaluations += evals;
    if (fu > best.value || (best.value == kNegInf && s == 0)) {
      best.value = fu;
      best.direction = u;
      best.converged = converged;
      best.start_index = s;
    }
    if (best.value == std::numeric_limits<double>::infinity()) break;
  }
  return best;
}

}  // namespace normconc::detail
