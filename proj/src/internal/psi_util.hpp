#pragma once

#include "normconc/geometry.hpp"

namespace normconc::detail {

/// Magnitude of Psi on unit covectors, used to decide when Psi(nu) counts as zero.
double psi_scale(const PsiFunctional& psi);

/// True when psi_value (= Psi(nu)) is zero up to roundoff for this nu.
bool psi_vanishes(const PsiFunctional& psi, const Covector& nu, double psi_value);

/// Quadratic forms that approximate Psi for the active-face polish (identity for
/// euclidean and custom functionals).
std::vector<Matrix> polish_forms(const PsiFunctional& psi, Index dim);

}  // namespace normconc::detail
