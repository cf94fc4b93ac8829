#include "ivams/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "ivams/error.hpp"

namespace ivams {

namespace {

void check_pair(std::span<const double> y, std::span<const double> yhat) {
  if (y.empty()) throw Error(ErrorCode::invalid_argument, "metric needs at least one observation");
  if (y.size() != yhat.size()) {
    throw Error(ErrorCode::dimension_mismatch, "observed/predicted lengths differ (" + std::to_string(y.size()) +
                                                   " vs " + std::to_string(yhat.size()) + ")");
  }
}

double sse(std::span<const double> y, std::span<const double> yhat) {
  double s = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double e = y[k] - yhat[k];
    s += e * e;
  }
  return s;
}

double mean(std::span<const double> y) {
  double s = 0.0;
  for (double v : y) s += v;
  return s / static_cast<double>(y.size());
}

double centered_ss(std::span<const double> y) {
  const double m = mean(y);
  double s = 0.0;
  for (double v : y) s += (v - m) * (v - m);
  return s;
}

double total_ss_checked(std::span<const double> y) {
  const double ss = centered_ss(y);
  if (!(ss > 0.0)) throw Error(ErrorCode::undefined_variance, "observed values are constant");
  return ss;
}

}  // namespace

double rmse(std::span<const double> y, std::span<const double> yhat) {
  check_pair(y, yhat);
  return std::sqrt(sse(y, yhat) / static_cast<double>(y.size()));
}

double r_squared(std::span<const double> y, std::span<const double> yhat) {
  check_pair(y, yhat);
  return 1.0 - sse(y, yhat) / total_ss_checked(y);
}

double rmae(std::span<const double> y, std::span<const double> yhat) {
  check_pair(y, yhat);
  const double ss = total_ss_checked(y);
  if (y.size() < 2) throw Error(ErrorCode::undefined_variance, "stddev needs two observations");
  const double sd = std::sqrt(ss / static_cast<double>(y.size() - 1));
  double worst = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) worst = std::max(worst, std::abs(y[k] - yhat[k]));
  return worst / sd;
}

double rrse(std::span<const double> y, std::span<const double> yhat) {
  check_pair(y, yhat);
  return std::sqrt(sse(y, yhat) / total_ss_checked(y));
}

bool is_overfit(const FitReport& report, double threshold) {
  if (std::isnan(report.r2_train) || std::isnan(report.r2_verify)) return false;
  return std::abs(report.r2_train - report.r2_verify) > threshold;
}

FitReport make_fit_report(std::string descriptor, std::string response, std::size_t parameters,
                          std::span<const double> y_train, std::span<const double> yhat_train,
                          std::span<const double> y_verify, std::span<const double> yhat_verify,
                          double overfit_threshold) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  auto guarded = [&](auto fn, std::span<const double> y, std::span<const double> yh) {
    try {
      return fn(y, yh);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::undefined_variance) return nan;
      throw;
    }
  };
  FitReport r;
  r.model_descriptor = std::move(descriptor);
  r.response = std::move(response);
  r.parameters = parameters;
  r.n_train = y_train.size();
  r.n_verify = y_verify.size();
  r.rmse_train = rmse(y_train, yhat_train);
  r.r2_train = guarded(r_squared, y_train, yhat_train);
  r.rmse = rmse(y_verify, yhat_verify);
  r.r2_verify = guarded(r_squared, y_verify, yhat_verify);
  r.rmae = guarded(ivams::rmae, y_verify, yhat_verify);
  r.rrse = guarded(ivams::rrse, y_verify, yhat_verify);
  r.overfit = is_overfit(r, overfit_threshold);
  return r;
}

std::size_t select_best(std::span<const FitReport> reports, SelectionCriterion criterion) {
  if (reports.empty()) throw Error(ErrorCode::invalid_argument, "select_best needs at least one report");
  // Maps each report to a "lower is better" score; NaN sorts last.
  auto score = [&](const FitReport& r) {
    const double s = criterion == SelectionCriterion::verify_rmse ? r.rmse : -r.r2_verify;
    return std::isnan(s) ? std::numeric_limits<double>::infinity() : s;
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < reports.size(); ++i) {
    const double si = score(reports[i]);
    const double sb = score(reports[best]);
    if (si < sb || (si == sb && reports[i].parameters < reports[best].parameters)) best = i;
  }
  return best;
}

namespace {

nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

double num_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j[key].get<double>();
}

}  // namespace

std::string to_json_text(std::span<const FitReport> reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    arr.push_back({{"model", r.model_descriptor},
                   {"response", r.response},
                   {"scaling", r.scaling},
                   {"hidden", r.hidden},
                   {"parameters", r.parameters},
                   {"r2_train", num(r.r2_train)},
                   {"r2_verify", num(r.r2_verify)},
                   {"rmse", num(r.rmse)},
                   {"rmse_train", num(r.rmse_train)},
                   {"rmae", num(r.rmae)},
                   {"rrse", num(r.rrse)},
                   {"n_train", r.n_train},
                   {"n_verify", r.n_verify},
                   {"overfit", r.overfit}});
  }
  return arr.dump(2);
}

std::vector<FitReport> fit_reports_from_json_text(std::string_view text) {
  try {
    const auto arr = nlohmann::json::parse(text);
    std::vector<FitReport> out;
    for (const auto& j : arr) {
      FitReport r;
      r.model_descriptor = j.at("model").get<std::string>();
      r.response = j.value("response", "");
      r.scaling = j.value("scaling", "none");
      r.hidden = j.value("hidden", std::size_t{0});
      r.parameters = j.value("parameters", std::size_t{0});
      r.r2_train = num_from(j, "r2_train");
      r.r2_verify = num_from(j, "r2_verify");
      r.rmse = num_from(j, "rmse");
      r.rmse_train = num_from(j, "rmse_train");
      r.rmae = num_from(j, "rmae");
      r.rrse = num_from(j, "rrse");
      r.n_train = j.value("n_train", std::size_t{0});
      r.n_verify = j.value("n_verify", std::size_t{0});
      r.overfit = j.value("overfit", false);
      out.push_back(std::move(r));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("fit report JSON: ") + e.what());
  }
}

std::string render_table(std::span<const FitReport> reports) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %-18s %-9s %9s %9s %12s %8s %8s %7s %6s\n", "response", "function", "filtering",
                "R2-train", "R2-verify", "RMSE", "RMAE", "RRSE", "neurons", "coeffs");
  out += line;
  for (const auto& r : reports) {
    std::string neurons = r.hidden ? std::to_string(r.hidden) : "";
    std::snprintf(line, sizeof line, "%-12s %-18s %-9s %9.4f %9.4f %12.6g %8.4f %8.4f %7s %6zu%s\n", r.response.c_str(),
                  r.model_descriptor.c_str(), r.scaling.c_str(), r.r2_train, r.r2_verify, r.rmse, r.rmae, r.rrse,
                  neurons.c_str(), r.parameters, r.overfit ? "  overfit" : "");
    out += line;
  }
  return out;
}

}  // namespace ivams
