#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ivams {

enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  degenerate_column,
  undefined_variance,
  missing_response,
  rank_deficient,
  training_diverged,
  infeasible,
  count_mismatch,
  parse_error,
  io_error,
};

std::string_view to_string(ErrorCode code);

/// Numerical failures (rank deficiency, divergence, infeasibility) as opposed
/// to malformed input.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown by MOFA when no evaluated point ever satisfied the constraints.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& message, double best_violation);

  double best_violation() const noexcept { return best_violation_; }

 private:
  double best_violation_;
};

}  // namespace ivams
