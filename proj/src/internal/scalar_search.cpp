#include "internal/scalar_search.hpp"

#include <algorithm>
#include <cmath>

namespace normconc::detail {

ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double rel_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int iter = 0;
  while (b - a > rel_tol * std::max(1.0, std::abs(0.5 * (a + b))) && iter < 400) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++iter;
  }
  ScalarMinimum out;
  out.converged = iter < 400;
  // Endpoints are candidates too: the minimum of a monotone function sits there.
  const double candidates[] = {a, 0.5 * (a + b), b, lo, hi};
  out.argmin = c;
  out.value = fc;
  for (double s : candidates) {
    const double v = f(s);
    if (v < out.value) {
      out.value = v;
      out.argmin = s;
    }
  }
  return out;
}

ScalarMinimum minimize_convex_halfline(const std::function<double(double)>& f, double upper_limit,
                                       double rel_tol) {
  const double f0 = f(0.0);
  double lo = 0.0;
  double s = 1.0;
  double v = f(s);
  if (!(v < f0)) return golden_section_minimize(f, 0.0, 1.0, rel_tol);
  while (true) {
    const double next = 2.0 * s;
    if (next > upper_limit) {
      ScalarMinimum out = golden_section_minimize(f, lo, upper_limit, rel_tol);
      const double at_limit = f(upper_limit);
      if (at_limit <= out.value) {
        out.argmin = upper_limit;
        out.value = at_limit;
        out.at_upper_limit = true;
      }
      return out;
    }
    const double nv = f(next);
    if (!(nv < v)) return golden_section_minimize(f, lo, next, rel_tol);
    lo = s;
    s = next;
    v = nv;
  }
}

}  // namespace normconc::detail
