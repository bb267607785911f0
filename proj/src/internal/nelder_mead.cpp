#include "internal/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace normconc::detail {

NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0, double step,
                             double tol, long max_evals) {
  const Index n = x0.size();
  const double dn = static_cast<double>(std::max<Index>(n, 2));
  const double gamma = 1.0 + 2.0 / dn;
  const double rho = 0.75 - 1.0 / (2.0 * dn);
  const double sigma = 1.0 - 1.0 / dn;

  NelderMeadResult out;
  auto eval = [&](const Vector& x) {
    ++out.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<Vector> simplex(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> values(simplex.size());
  values[0] = eval(x0);
  for (Index i = 0; i < n; ++i) {
    simplex[static_cast<std::size_t>(i + 1)](i) += step;
    values[static_cast<std::size_t>(i + 1)] = eval(simplex[static_cast<std::size_t>(i + 1)]);
  }
  std::vector<std::size_t> order(simplex.size());

  while (out.evaluations < max_evals) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];

    double size = 0.0;
    for (const auto& p : simplex) size = std::max(size, (p - simplex[best]).norm());
    if (size <= tol * std::max(1.0, simplex[best].norm())) {
      out.converged = true;
      break;
    }

    Vector centroid = Vector::Zero(n);
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= static_cast<double>(n);

    const Vector xr = 2.0 * centroid - simplex[worst];
    const double fr = eval(xr);
    if (fr < values[best]) {
      const Vector xe = centroid + gamma * (xr - centroid);
      const double fe = eval(xe);
      simplex[worst] = fe < fr ? xe : xr;
      values[worst] = std::min(fe, fr);
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
    const double fc = eval(xc);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = xc;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + sigma * (simplex[i] - simplex[best]);
      values[i] = eval(simplex[i]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  out.x = simplex[best];
  out.value = values[best];
  return out;
}

}  // namespace normconc::detail
