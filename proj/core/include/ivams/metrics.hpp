#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ivams {

/// sqrt(mean squared error). Throws on empty or mismatched inputs.
double rmse(std::span<const double> y, std::span<const double> yhat);

/// 1 - SSE / SStot. Throws Error(undefined_variance) for constant y.
double r_squared(std::span<const double> y, std::span<const double> yhat);

/// Relative maximum absolute error: max |y - yhat| / stddev(y) (sample stddev).
double rmae(std::span<const double> y, std::span<const double> yhat);

/// Root relative squared error: sqrt(SSE / SStot).
double rrse(std::span<const double> y, std::span<const double> yhat);

/// Goodness-of-fit summary for one trained metamodel. Statistics that are
/// undefined for a constant response are stored as NaN.
struct FitReport {
  std::string model_descriptor;
  std::string response;
  std::string scaling = "none";
  std::size_t hidden = 0;         // neurons for ANN/RBF, 0 otherwise
  std::size_t parameters = 0;     // weights or coefficients
  double r2_train = 0.0;
  double r2_verify = 0.0;
  double rmse = 0.0;              // verification set, response units
  double rmse_train = 0.0;
  double rmae = 0.0;
  double rrse = 0.0;
  std::size_t n_train = 0;
  std::size_t n_verify = 0;
  bool overfit = false;
};

inline constexpr double kDefaultOverfitThreshold = 0.2;

/// Builds a report from predictions on the training and verification sets.
FitReport make_fit_report(std::string descriptor, std::string response, std::size_t parameters,
                          std::span<const double> y_train, std::span<const double> yhat_train,
                          std::span<const double> y_verify, std::span<const double> yhat_verify,
                          double overfit_threshold = kDefaultOverfitThreshold);

/// True when the train/verify R² gap exceeds the threshold.
bool is_overfit(const FitReport& report, double threshold = kDefaultOverfitThreshold);

enum class SelectionCriterion { verify_rmse, verify_r2 };

/// Best report by the criterion; ties go to fewer parameters, then to the
/// earlier entry. Throws on an empty list.
std::size_t select_best(std::span<const FitReport> reports, SelectionCriterion criterion);

std::string to_json_text(std::span<const FitReport> reports);
std::vector<FitReport> fit_reports_from_json_text(std::string_view text);

/// Fixed-width table: function, filtering, R²-train, R²-verify, RMSE, RMAE,
/// RRSE, neurons, coefficients.
std::string render_table(std::span<const FitReport> reports);

}  // namespace ivams
