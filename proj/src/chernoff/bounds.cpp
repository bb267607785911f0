#include "normconc/chernoff.hpp"

#include "internal/scalar_search.hpp"

#include <algorithm>
#include <cmath>

namespace normconc {
namespace {

// Variance proxy of <nu, X> for the models with a quadratic log-MGF.
std::optional<double> quadratic_variance(const MgfModel& model, const Covector& nu) {
  if (const auto* g = std::get_if<GaussianModel>(&model.data())) return std::max(0.0, nu.dot(g->covariance * nu));
  if (const auto* b = std::get_if<BoundedProductModel>(&model.data())) {
    return nu.cwiseProduct(b->interval_lengths).squaredNorm() / 4.0;
  }
  return std::nullopt;
}

std::optional<PsiFunctional> quadratic_psi(const MgfModel& model) {
  if (const auto* g = std::get_if<GaussianModel>(&model.data())) return PsiFunctional::weighted_quadratic(g->covariance);
  if (const auto* b = std::get_if<BoundedProductModel>(&model.data())) {
    return PsiFunctional::diagonal(b->interval_lengths.cwiseProduct(b->interval_lengths) / 4.0);
  }
  return std::nullopt;
}

BoundReport base_report(const MgfModel& model, BoundMethod method) {
  BoundReport r;
  r.method = method;
  r.upper_bound_model = !model.exact();
  if (r.upper_bound_model) r.add_note("MGF is Hoeffding's upper bound; the result is an upper bound only");
  return r;
}

}  // namespace

BoundReport chernoff_halfspace(const MgfModel& model, const HalfSpace& h, const ChernoffOptions& options) {
  require_dim(model.dim(), h.dim(), "half-space");
  BoundReport r = base_report(model, BoundMethod::chernoff_halfspace);
  Witness w{h.normal, h.base_point, 0.0, 0.0};
  if (h.degenerate()) {
    r.add_note("degenerate half-space (nu = 0) is the whole space");
    r.witness = w;
    return r;
  }

  const auto variance = quadratic_variance(model, h.normal);
  if (variance && !options.force_numeric) {
    const double gap = h.normal.dot(model.mean() - h.base_point);
    const double scale = std::max(1.0, h.normal.squaredNorm());
    if (gap <= 0.0) {
      r.set_exponent(0.0);
    } else if (*variance <= 1e-26 * scale) {
      r.set_exponent(-kInf);
      r.degenerate = true;
      w.s = kInf;
      r.add_note("zero variance along nu with positive separation");
    } else {
      r.set_exponent(-gap * gap / (2.0 * *variance));
      w.s = gap / *variance;
      w.distance = gap / std::sqrt(*variance);
    }
    r.witness = w;
    return r;
  }

  const double offset = h.offset();
  auto phi = [&](double s) { return s * offset + model.log_mgf(-s * h.normal); };
  if (!std::isfinite(phi(1e-12))) {
    r.add_note("MGF is infinite for every s > 0; trivial bound");
    r.witness = w;
    return r;
  }
  const auto m = detail::minimize_convex_halfline(phi);
  r.converged = m.converged;
  double exponent = std::min(m.value, 0.0);
  w.s = m.value < 0.0 ? m.argmin : 0.0;
  if (m.at_upper_limit) {
    const double lim = m.argmin;
    const double slope = (phi(lim) - phi(0.5 * lim)) / (0.5 * lim);
    if (slope < -1e-9) {
      exponent = -kInf;
      w.s = kInf;
      r.add_note("infimum approached as s -> infinity");
    }
  }
  r.set_exponent(exponent);
  r.witness = w;
  return r;
}

BoundReport chernoff_convex(const MgfModel& model, const ConvexBody& body, const ChernoffOptions& options) {
  require_dim(model.dim(), body.dim(), "convex body");
  BoundReport r = base_report(model, BoundMethod::chernoff_convex);
  const Vector mean = model.mean();

  if (const auto psi = quadratic_psi(model); psi && !options.force_numeric) {
    const auto d = normal_distance(*psi, mean, body, options.search);
    r.converged = d.converged;
    r.degenerate = d.degenerate;
    r.set_exponent(d.distance == kInf ? -kInf : -0.5 * d.distance * d.distance);
    // With Psi(nu) = sigma(nu) = 1 the optimal s equals the distance.
    r.witness = Witness{d.normal, d.support_point, d.distance, d.distance};
    if (d.degenerate) r.add_note("zero variance along a separating direction");
    return r;
  }

  if (body.contains(mean)) {
    r.witness = Witness{Covector::Zero(body.dim()), mean, 0.0, 0.0};
    return r;
  }
  if (model.dim() != 1) {
    throw Error(ErrorCode::invalid_argument, "numeric convex Chernoff bounds are implemented for scalar models");
  }
  // The unit sphere of R^1 is {+1, -1}.
  BoundReport best;
  best.exponent = kInf;
  for (double sgn : {1.0, -1.0}) {
    const Covector nu = Covector::Constant(1, sgn);
    const double hk = body.support(nu);
    if (hk == kInf) continue;
    auto b = chernoff_halfspace(model, HalfSpace(Vector::Constant(1, sgn * hk), nu), options);
    if (b.exponent < best.exponent) best = b;
  }
  if (best.exponent == kInf) return r;
  best.method = BoundMethod::chernoff_convex;
  return best;
}

LegendreResult legendre_transform(const std::function<double(double)>& lambda, double x,
                                  const std::function<double(double)>& limit) {
  if (!std::isfinite(x)) throw Error(ErrorCode::invalid_argument, "Legendre transform point must be finite");
  const double l0 = lambda(0.0);
  if (!std::isfinite(l0)) throw Error(ErrorCode::invalid_argument, "Lambda must be finite at 0");

  auto g = [&](double l) { return l * x - lambda(l); };
  LegendreResult best{g(0.0), 0.0, false, {}};

  for (double sgn : {1.0, -1.0}) {
    auto f = [&](double s) {
      const double v = -g(sgn * s);
      return std::isnan(v) ? kInf : v;
    };
    const auto m = detail::minimize_convex_halfline(f);
    LegendreResult side{-m.value, sgn * m.argmin, false, {}};
    if (m.at_upper_limit) {
      const double big = 1e6;
      const double slope = (g(sgn * 2.0 * big) - g(sgn * big)) / big;
      side.at_infinity = true;
      side.argmax = sgn * kInf;
      if (slope > 1e-9) {
        side.value = kInf;
        side.notes = "supremum diverges";
      } else if (limit) {
        side.value = limit(x);
        side.notes = "supremum approached at infinity; analytic limit";
      } else {
        // g is concave and increasing here: its values along a geometric grid rise to
        // the limit until roundoff takes over.
        double v = side.value;
        for (int k = 0; k <= 62; ++k) {
          const double gv = g(sgn * std::ldexp(1.0, k));
          if (std::isfinite(gv)) v = std::max(v, gv);
        }
        side.value = v;
        side.notes = "supremum approached at infinity; numerical limit";
      }
    }
    if (side.value > best.value) best = side;
  }
  return best;
}

MomentComparison moment_vs_chernoff(const MgfModel& model, double theta, int k_max) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw Error(ErrorCode::invalid_argument, "theta must be positive");
  if (k_max < 0) throw Error(ErrorCode::invalid_argument, "k_max must be nonnegative");
  const auto atoms = model.atoms();
  if (atoms.empty()) {
    throw Error(ErrorCode::invalid_argument, "moment comparison needs an empirical or closed-form scalar model");
  }
  double top = -kInf;
  for (const auto& [y, p] : atoms) {
    if (p <= 0.0) continue;
    if (y < 0.0) throw Error(ErrorCode::invalid_argument, "moment comparison needs a nonnegative variable");
    top = std::max(top, y);
  }

  const double log_theta = std::log(theta);
  // log(theta^-k E[Y^k]); k is real-valued here only for the bracketing below.
  auto log_bound = [&](double k) {
    double hi = -kInf;
    std::vector<double> t;
    t.reserve(atoms.size());
    for (const auto& [y, p] : atoms) {
      if (p <= 0.0) continue;
      const double term = std::log(p) + (k == 0.0 ? 0.0 : (y > 0.0 ? k * std::log(y) : -kInf));
      t.push_back(term);
      hi = std::max(hi, term);
    }
    if (hi == -kInf) return -kInf;
    double acc = 0.0;
    for (double v : t) acc += std::exp(v - hi);
    return hi + std::log(acc) - k * log_theta;
  };

  MomentComparison out;
  out.log_moment_bounds.reserve(static_cast<std::size_t>(k_max) + 1);
  double best = kInf;
  for (int k = 0; k <= k_max; ++k) {
    const double v = log_bound(k);
    out.log_moment_bounds.push_back(v);
    if (v < best) {
      best = v;
      out.best_k = k;
    }
  }
  out.moment_exponent = std::min(best, 0.0);
  out.moment_bound = std::exp(out.moment_exponent);

  // k -> log E[Y^k] is convex, so the bound sequence is unimodal in k.
  if (top < theta) {
    out.moment_infimum_exponent = -kInf;
  } else {
    const double cap = std::ldexp(1.0, 40);
    double k = 1.0;
    while (k < cap && log_bound(2.0 * k) < log_bound(k)) k *= 2.0;
    double lo = std::floor(k / 2.0);
    double hi = std::min(2.0 * k, cap);
    while (hi - lo > 1.0) {  // smallest k with a nondecreasing next step
      const double mid = std::floor(0.5 * (lo + hi));
      if (log_bound(mid + 1.0) >= log_bound(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out.moment_infimum_exponent = std::min({log_bound(lo), log_bound(hi), best, 0.0});
  }
  out.moment_infimum = std::exp(out.moment_infimum_exponent);

  auto phi = [&](double s) { return model.log_mgf(Covector::Constant(1, s)) - s * theta; };
  if (top < theta) {
    out.chernoff_exponent = -kInf;
    out.chernoff_s = kInf;
    out.notes = "theta exceeds the essential supremum: both bounds vanish";
  } else {
    const auto m = detail::minimize_convex_halfline(phi);
    out.chernoff_exponent = std::min(m.value, 0.0);
    out.chernoff_s = m.value < 0.0 ? m.argmin : 0.0;
  }
  out.chernoff_bound = std::exp(out.chernoff_exponent);
  out.inequality_holds = out.moment_infimum <= out.chernoff_bound + 1e-12;
  if (!out.inequality_holds) out.notes = "moment bound exceeds the Chernoff bound";
  return out;
}

}  // namespace normconc
