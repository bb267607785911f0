#include "normconc/report.hpp"

#include <algorithm>
#include <cmath>

namespace normconc {

const char* to_string(BoundMethod m) noexcept {
  switch (m) {
    case BoundMethod::chernoff_halfspace: return "chernoff-halfspace";
    case BoundMethod::chernoff_convex: return "chernoff-convex";
    case BoundMethod::portmanteau: return "portmanteau";
    case BoundMethod::mcdiarmid: return "mcdiarmid";
    case BoundMethod::orthant: return "orthant";
    case BoundMethod::moment: return "moment";
    case BoundMethod::link: return "link";
  }
  return "unknown";
}

void BoundReport::set_exponent(double e) {
  exponent = std::isnan(e) ? 0.0 : std::min(e, 0.0);
  if (exponent == 0.0) exponent = 0.0;  // no -0 in reports
  value = std::clamp(std::exp(exponent), 0.0, 1.0);
}

void BoundReport::add_note(const std::string& note) {
  if (!notes.empty()) notes += "; ";
  notes += note;
}

}  // namespace normconc
