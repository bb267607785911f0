#include "internal/linprog.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace normconc::detail {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;

// Standard form tableau: rows 0..m-1 are constraints, row m is the reduced-cost
// row of a minimization, the last column holds the right-hand side.
class Tableau {
 public:
  Tableau(Matrix t, std::vector<Index> basis) : t_(std::move(t)), basis_(std::move(basis)) {}

  Index rows() const { return t_.rows() - 1; }
  Index cols() const { return t_.cols() - 1; }
  double& cost(Index j) { return t_(rows(), j); }
  double rhs(Index i) const { return t_(i, cols()); }
  double objective() const { return -t_(t_.rows() - 1, t_.cols() - 1); }
  const std::vector<Index>& basis() const { return basis_; }
  Matrix& raw() { return t_; }

  void pivot(Index row, Index col) {
    t_.row(row) /= t_(row, col);
    for (Index i = 0; i < t_.rows(); ++i) {
      if (i != row && t_(i, col) != 0.0) {
        t_.row(i) -= t_(i, col) * t_.row(row);
      }
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  // Returns false when unbounded. `allowed(j)` filters entering columns.
  template <class Allowed>
  bool run(Allowed allowed) {
    const Index m = rows();
    const double scale = m > 0 ? std::max(1.0, t_.col(cols()).head(m).cwiseAbs().maxCoeff()) : 1.0;
    for (int iter = 0; iter < 50000; ++iter) {
      Index enter = -1;
      for (Index j = 0; j < cols(); ++j) {
        if (allowed(j) && t_(m, j) < -kCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Index i = 0; i < m; ++i) {
        if (t_(i, enter) > kPivotTol) {
          const double ratio = t_(i, cols()) / t_(i, enter);
          if (ratio < best - 1e-14 * scale ||
              (std::abs(ratio - best) <= 1e-14 * scale && leave >= 0 &&
               basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw Error(ErrorCode::internal, "simplex iteration limit reached");
  }

 private:
  Matrix t_;
  std::vector<Index> basis_;
};

}  // namespace

LpResult maximize_linear(const Vector& c, const Matrix& a, const Vector& b) {
  const Index m = a.rows();
  const Index n = a.cols();
  require_dim(n, c.size(), "linear program objective");
  require_dim(m, b.size(), "linear program right-hand side");

  // Columns: x+ (n), x- (n), slack (m), artificial (one per row with b < 0).
  std::vector<Index> needs_artificial;
  for (Index i = 0; i < m; ++i) {
    if (b(i) < 0.0) needs_artificial.push_back(i);
  }
  const Index n_art = static_cast<Index>(needs_artificial.size());
  const Index first_slack = 2 * n;
  const Index first_art = 2 * n + m;
  const Index n_cols = 2 * n + m + n_art;

  Matrix t = Matrix::Zero(m + 1, n_cols + 1);
  std::vector<Index> basis(static_cast<std::size_t>(m));
  Index art = 0;
  for (Index i = 0; i < m; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    t.block(i, 0, 1, n) = sign * a.row(i);
    t.block(i, n, 1, n) = -sign * a.row(i);
    t(i, first_slack + i) = sign;
    t(i, n_cols) = sign * b(i);
    if (sign < 0.0) {
      t(i, first_art + art) = 1.0;
      basis[static_cast<std::size_t>(i)] = first_art + art;
      ++art;
    } else {
      basis[static_cast<std::size_t>(i)] = first_slack + i;
    }
  }

  Tableau tab(std::move(t), std::move(basis));
  auto is_art = [&](Index j) { return j >= first_art; };

  if (n_art > 0) {
    // Phase 1: minimize the sum of artificials.
    for (Index k = 0; k < n_art; ++k) tab.cost(first_art + k) = 1.0;
    for (Index i = 0; i < m; ++i) {
      if (is_art(tab.basis()[static_cast<std::size_t>(i)])) {
        tab.raw().row(m) -= tab.raw().row(i);
      }
    }
    tab.run([](Index) { return true; });
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    if (tab.objective() > 1e-9 * scale) {
      return {LpStatus::infeasible, Vector(), 0.0};
    }
    // Drive remaining artificials out of the basis where possible.
    for (Index i = 0; i < m; ++i) {
      if (!is_art(tab.basis()[static_cast<std::size_t>(i)])) continue;
      for (Index j = 0; j < first_art; ++j) {
        if (std::abs(tab.raw()(i, j)) > 1e-9) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase 2: minimize -c^T (x+ - x-).
  tab.raw().row(m).setZero();
  for (Index j = 0; j < n; ++j) {
    tab.cost(j) = -c(j);
    tab.cost(n + j) = c(j);
  }
  for (Index i = 0; i < m; ++i) {
    const Index bj = tab.basis()[static_cast<std::size_t>(i)];
    const double cb = tab.raw()(m, bj);
    if (cb != 0.0) tab.raw().row(m) -= cb * tab.raw().row(i);
  }
  if (!tab.run([&](Index j) { return !is_art(j); })) {
    return {LpStatus::unbounded, Vector(), std::numeric_limits<double>::infinity()};
  }

  Vector x = Vector::Zero(n);
  for (Index i = 0; i < m; ++i) {
    const Index bj = tab.basis()[static_cast<std::size_t>(i)];
    if (bj < n) {
      x(bj) += tab.rhs(i);
    } else if (bj < 2 * n) {
      x(bj - n) -= tab.rhs(i);
    }
  }
  return {LpStatus::optimal, x, c.dot(x)};
}

}  // namespace normconc::detail
