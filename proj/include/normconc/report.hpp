#pragma once

#include "normconc/types.hpp"

#include <optional>
#include <string>

namespace normconc {

enum class BoundMethod { chernoff_halfspace, chernoff_convex, portmanteau, mcdiarmid, orthant, moment, link };

const char* to_string(BoundMethod m) noexcept;

struct Witness {
  Covector normal;   // optimal nu (empty when not applicable)
  Vector point;      // optimal p
  double s = 0.0;    // Chernoff parameter, when one was optimized
  double distance = 0.0;
};

/// A probability upper bound. `exponent` is the natural log of the bound before
/// clamping, so it survives when exp() underflows; value = clamp(exp(exponent), 0, 1).
struct BoundReport {
  double value = 1.0;
  double exponent = 0.0;
  BoundMethod method = BoundMethod::portmanteau;
  std::optional<Witness> witness;
  bool converged = true;
  bool degenerate = false;   // infinite separation rate, bound forced to 0
  bool upper_bound_model = false;  // derived from an MGF upper bound, not the exact MGF
  std::string notes;

  void set_exponent(double e);
  void add_note(const std::string& note);
};

}  // namespace normconc
