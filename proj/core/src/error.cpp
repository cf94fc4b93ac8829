#include "ivams/error.hpp"

namespace ivams {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::degenerate_column: return "degenerate-column";
    case ErrorCode::undefined_variance: return "undefined-variance";
    case ErrorCode::missing_response: return "missing-response";
    case ErrorCode::rank_deficient: return "rank-deficient";
    case ErrorCode::training_diverged: return "training-diverged";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::count_mismatch: return "count-mismatch";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown";
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::undefined_variance:
    case ErrorCode::rank_deficient:
    case ErrorCode::training_diverged:
    case ErrorCode::infeasible:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

InfeasibleError::InfeasibleError(const std::string& message, double best_violation)
    : Error(ErrorCode::infeasible, message), best_violation_(best_violation) {}

}  // namespace ivams
