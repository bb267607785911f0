#include "normconc/chernoff.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace normconc {
namespace {

double log_sum_exp(const std::vector<double>& terms) {
  double hi = -kInf;
  for (double t : terms) hi = std::max(hi, t);
  if (hi == -kInf || hi == kInf) return hi;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - hi);
  return hi + std::log(acc);
}

// log cosh without overflow.
double log_cosh(double l) {
  const double a = std::abs(l);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

void require_psd(const Matrix& c) {
  if (c.rows() != c.cols()) throw Error(ErrorCode::invalid_argument, "covariance must be square");
  if (!c.allFinite()) throw Error(ErrorCode::invalid_argument, "covariance has non-finite entries");
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::invalid_argument, "covariance must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(c, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10 * scale) {
    throw Error(ErrorCode::invalid_argument, "covariance must be positive semidefinite");
  }
}

}  // namespace

MgfModel MgfModel::gaussian(Vector mean, Matrix covariance) {
  require_finite(mean, "Gaussian mean");
  require_dim(mean.size(), covariance.rows(), "Gaussian covariance");
  require_psd(covariance);
  if (mean.size() == 0) throw Error(ErrorCode::invalid_argument, "Gaussian dimension must be positive");
  return MgfModel(GaussianModel{std::move(mean), 0.5 * (covariance + covariance.transpose())});
}

MgfModel MgfModel::bounded_product(Vector means, Vector interval_lengths) {
  require_dim(means.size(), interval_lengths.size(), "interval lengths");
  require_finite(means, "means");
  require_finite(interval_lengths, "interval lengths");
  if ((interval_lengths.array() < 0.0).any()) {
    throw Error(ErrorCode::invalid_argument, "interval lengths must be nonnegative");
  }
  if (means.size() == 0) throw Error(ErrorCode::invalid_argument, "dimension must be positive");
  return MgfModel(BoundedProductModel{std::move(means), std::move(interval_lengths)});
}

MgfModel MgfModel::empirical(std::vector<double> samples) {
  if (samples.empty()) throw Error(ErrorCode::empty_set, "empirical model needs samples");
  for (double s : samples) {
    if (!std::isfinite(s)) throw Error(ErrorCode::invalid_argument, "samples must be finite");
  }
  return MgfModel(EmpiricalModel{std::move(samples)});
}

MgfModel MgfModel::rademacher() { return MgfModel(ScalarClosedForm{ScalarClosedForm::Law::rademacher, -1.0, 1.0, 0.5}); }

MgfModel MgfModel::bernoulli(double a, double b, double q) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw Error(ErrorCode::invalid_argument, "atoms must be finite");
  if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorCode::invalid_argument, "Bernoulli q must lie in [0, 1]");
  return MgfModel(ScalarClosedForm{ScalarClosedForm::Law::bernoulli, a, b, q});
}

MgfModel MgfModel::point_mass(double a) {
  if (!std::isfinite(a)) throw Error(ErrorCode::invalid_argument, "atom must be finite");
  return MgfModel(ScalarClosedForm{ScalarClosedForm::Law::point_mass, a, a, 1.0});
}

Index MgfModel::dim() const {
  if (const auto* g = std::get_if<GaussianModel>(&data_)) return g->mean.size();
  if (const auto* b = std::get_if<BoundedProductModel>(&data_)) return b->means.size();
  return 1;
}

double MgfModel::log_mgf(const Covector& l) const {
  require_dim(dim(), l.size(), "MGF argument");
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, GaussianModel>) {
          return l.dot(m.mean) + 0.5 * l.dot(m.covariance * l);
        } else if constexpr (std::is_same_v<T, BoundedProductModel>) {
          return l.dot(m.means) + l.cwiseProduct(m.interval_lengths).squaredNorm() / 8.0;
        } else if constexpr (std::is_same_v<T, EmpiricalModel>) {
          std::vector<double> t;
          t.reserve(m.samples.size());
          for (double y : m.samples) t.push_back(l(0) * y);
          return log_sum_exp(t) - std::log(static_cast<double>(m.samples.size()));
        } else {
          const double s = l(0);
          switch (m.law) {
            case ScalarClosedForm::Law::rademacher: return log_cosh(s);
            case ScalarClosedForm::Law::point_mass: return s * m.a;
            case ScalarClosedForm::Law::bernoulli: {
              std::vector<double> t;
              if (m.q < 1.0) t.push_back(std::log1p(-m.q) + s * m.a);
              if (m.q > 0.0) t.push_back(std::log(m.q) + s * m.b);
              return log_sum_exp(t);
            }
          }
          return kInf;
        }
      },
      data_);
}

Vector MgfModel::mean() const {
  if (const auto* g = std::get_if<GaussianModel>(&data_)) return g->mean;
  if (const auto* b = std::get_if<BoundedProductModel>(&data_)) return b->means;
  double m = 0.0;
  for (const auto& [x, p] : atoms()) m += p * x;
  return Vector::Constant(1, m);
}

std::vector<std::pair<double, double>> MgfModel::atoms() const {
  std::vector<std::pair<double, double>> out;
  if (const auto* e = std::get_if<EmpiricalModel>(&data_)) {
    const double w = 1.0 / static_cast<double>(e->samples.size());
    for (double y : e->samples) out.emplace_back(y, w);
  } else if (const auto* c = std::get_if<ScalarClosedForm>(&data_)) {
    switch (c->law) {
      case ScalarClosedForm::Law::rademacher: out = {{-1.0, 0.5}, {1.0, 0.5}}; break;
      case ScalarClosedForm::Law::point_mass: out = {{c->a, 1.0}}; break;
      case ScalarClosedForm::Law::bernoulli:
        if (c->q < 1.0) out.emplace_back(c->a, 1.0 - c->q);
        if (c->q > 0.0) out.emplace_back(c->b, c->q);
        break;
    }
  }
  return out;
}

}  // namespace normconc
