#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>

namespace normconc {

using Index = Eigen::Index;

/// A point of R^N.
using Vector = Eigen::VectorXd;
/// An element of the dual (R^N)^*; pairs with a Vector via dot().
using Covector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Absolute tolerance on constraint residuals for membership and active-set tests.
inline constexpr double kMembershipTol = 1e-9;

enum class ErrorCode {
  invalid_argument = 1,
  dimension_mismatch,
  empty_set,
  infeasible,
  not_in_set,
  no_candidate,
  parse_error,
  internal,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require_dim(Index expected, Index actual, const char* what) {
  if (expected != actual) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(what) + ": expected dimension " + std::to_string(expected) + ", got " +
                    std::to_string(actual));
  }
}

inline void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw Error(ErrorCode::invalid_argument, std::string(what) + " must have finite entries");
  }
}

}  // namespace normconc
