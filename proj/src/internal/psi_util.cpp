#include "internal/psi_util.hpp"

#include <cmath>

namespace normconc::detail {

double psi_scale(const PsiFunctional& psi) {
  double s = 0.0;
  for (const auto& w : psi.forms()) s = std::max(s, std::sqrt(w.cwiseAbs().maxCoeff()));
  return psi.forms().empty() ? 1.0 : s;
}

bool psi_vanishes(const PsiFunctional& psi, const Covector& nu, double psi_value) {
  if (psi.kind() == PsiFunctional::Kind::custom) return psi_value <= 0.0;
  return psi_value <= 1e-13 * psi_scale(psi) * nu.norm();
}

std::vector<Matrix> polish_forms(const PsiFunctional& psi, Index dim) {
  if (!psi.forms().empty()) return psi.forms();
  return {Matrix::Identity(dim, dim)};
}

}  // namespace normconc::detail
