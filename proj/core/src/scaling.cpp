#include "ivams/scaling.hpp"

#include <cmath>

#include "ivams/error.hpp"

namespace ivams {

std::string_view to_string(ScalerKind kind) {
  switch (kind) {
    case ScalerKind::none: return "none";
    case ScalerKind::meanstd: return "meanstd";
    case ScalerKind::minmax: return "minmax";
  }
  return "none";
}

ScalerKind parse_scaler_kind(std::string_view text) {
  if (text == "none") return ScalerKind::none;
  if (text == "meanstd") return ScalerKind::meanstd;
  if (text == "minmax") return ScalerKind::minmax;
  throw Error(ErrorCode::invalid_argument, "unknown scaler kind '" + std::string(text) + "'");
}

Scaler Scaler::identity(std::size_t columns) {
  Scaler s;
  s.first_.assign(columns, 0.0);
  s.second_.assign(columns, 1.0);
  return s;
}

Scaler Scaler::meanstd(std::vector<double> mean, std::vector<double> stddev) {
  if (mean.size() != stddev.size()) throw Error(ErrorCode::dimension_mismatch, "mean/stddev length mismatch");
  for (std::size_t i = 0; i < stddev.size(); ++i) {
    if (!(stddev[i] > 0.0) || !std::isfinite(stddev[i]) || !std::isfinite(mean[i])) {
      throw Error(ErrorCode::degenerate_column, "column " + std::to_string(i) + " needs a finite stddev > 0");
    }
  }
  Scaler s;
  s.kind_ = ScalerKind::meanstd;
  s.first_ = std::move(mean);
  s.second_ = std::move(stddev);
  return s;
}

Scaler Scaler::minmax(std::vector<double> min, std::vector<double> max) {
  if (min.size() != max.size()) throw Error(ErrorCode::dimension_mismatch, "min/max length mismatch");
  for (std::size_t i = 0; i < min.size(); ++i) {
    if (!(max[i] > min[i]) || !std::isfinite(max[i]) || !std::isfinite(min[i])) {
      throw Error(ErrorCode::degenerate_column, "column " + std::to_string(i) + " needs finite max > min");
    }
  }
  Scaler s;
  s.kind_ = ScalerKind::minmax;
  s.first_ = std::move(min);
  s.second_ = std::move(max);
  return s;
}

double Scaler::gain(std::size_t c) const {
  switch (kind_) {
    case ScalerKind::meanstd: return 1.0 / second_[c];
    case ScalerKind::minmax: return 2.0 / (second_[c] - first_[c]);
    case ScalerKind::none: break;
  }
  return 1.0;
}

double Scaler::offset(std::size_t c) const {
  switch (kind_) {
    case ScalerKind::meanstd: return -first_[c] / second_[c];
    case ScalerKind::minmax: return -2.0 * first_[c] / (second_[c] - first_[c]) - 1.0;
    case ScalerKind::none: break;
  }
  return 0.0;
}

double Scaler::apply(std::size_t c, double v) const {
  switch (kind_) {
    case ScalerKind::meanstd: return (v - first_[c]) / second_[c];
    case ScalerKind::minmax: return 2.0 * (v - first_[c]) / (second_[c] - first_[c]) - 1.0;
    case ScalerKind::none: break;
  }
  return v;
}

double Scaler::invert(std::size_t c, double v) const {
  switch (kind_) {
    case ScalerKind::meanstd: return v * second_[c] + first_[c];
    case ScalerKind::minmax: return (v + 1.0) * 0.5 * (second_[c] - first_[c]) + first_[c];
    case ScalerKind::none: break;
  }
  return v;
}

void Scaler::apply_in_place(std::span<double> row) const {
  if (row.size() != columns()) {
    throw Error(ErrorCode::dimension_mismatch, "row has " + std::to_string(row.size()) + " values, scaler expects " +
                                                   std::to_string(columns()));
  }
  for (std::size_t c = 0; c < row.size(); ++c) row[c] = apply(c, row[c]);
}

Eigen::MatrixXd Scaler::apply(const Eigen::MatrixXd& data) const {
  if (static_cast<std::size_t>(data.cols()) != columns()) {
    throw Error(ErrorCode::dimension_mismatch, "matrix has " + std::to_string(data.cols()) +
                                                   " columns, scaler expects " + std::to_string(columns()));
  }
  Eigen::MatrixXd out(data.rows(), data.cols());
  for (Eigen::Index c = 0; c < data.cols(); ++c) {
    for (Eigen::Index r = 0; r < data.rows(); ++r) out(r, c) = apply(static_cast<std::size_t>(c), data(r, c));
  }
  return out;
}

Eigen::MatrixXd Scaler::invert(const Eigen::MatrixXd& data) const {
  if (static_cast<std::size_t>(data.cols()) != columns()) {
    throw Error(ErrorCode::dimension_mismatch, "matrix has " + std::to_string(data.cols()) +
                                                   " columns, scaler expects " + std::to_string(columns()));
  }
  Eigen::MatrixXd out(data.rows(), data.cols());
  for (Eigen::Index c = 0; c < data.cols(); ++c) {
    for (Eigen::Index r = 0; r < data.rows(); ++r) out(r, c) = invert(static_cast<std::size_t>(c), data(r, c));
  }
  return out;
}

namespace {

std::string column_label(std::span<const std::string> names, std::size_t c) {
  if (c < names.size()) return "'" + names[c] + "'";
  return "#" + std::to_string(c);
}

double column_mean(const Eigen::MatrixXd& data, Eigen::Index c) {
  double sum = 0.0;
  for (Eigen::Index r = 0; r < data.rows(); ++r) sum += data(r, c);
  return sum / static_cast<double>(data.rows());
}

// Sample (n - 1) standard deviation; 0 for a single row.
double column_stddev(const Eigen::MatrixXd& data, Eigen::Index c, double mean) {
  if (data.rows() < 2) return 0.0;
  double ss = 0.0;
  for (Eigen::Index r = 0; r < data.rows(); ++r) {
    const double d = data(r, c) - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(data.rows() - 1));
}

}  // namespace

Scaler fit_scaler(const Eigen::MatrixXd& data, ScalerKind kind, std::span<const std::string> names) {
  if (data.rows() == 0 || data.cols() == 0) throw Error(ErrorCode::invalid_argument, "cannot fit a scaler on empty data");
  const auto cols = static_cast<std::size_t>(data.cols());
  switch (kind) {
    case ScalerKind::none:
      return Scaler::identity(cols);
    case ScalerKind::meanstd: {
      std::vector<double> mean(cols), sd(cols);
      for (std::size_t c = 0; c < cols; ++c) {
        const auto ci = static_cast<Eigen::Index>(c);
        mean[c] = column_mean(data, ci);
        sd[c] = column_stddev(data, ci, mean[c]);
        if (!(sd[c] > 0.0)) {
          throw Error(ErrorCode::degenerate_column, "column " + column_label(names, c) + " is constant");
        }
      }
      return Scaler::meanstd(std::move(mean), std::move(sd));
    }
    case ScalerKind::minmax: {
      std::vector<double> lo(cols), hi(cols);
      for (std::size_t c = 0; c < cols; ++c) {
        const auto ci = static_cast<Eigen::Index>(c);
        lo[c] = data.col(ci).minCoeff();
        hi[c] = data.col(ci).maxCoeff();
        if (!(hi[c] > lo[c])) {
          throw Error(ErrorCode::degenerate_column, "column " + column_label(names, c) + " is constant");
        }
      }
      return Scaler::minmax(std::move(lo), std::move(hi));
    }
  }
  return Scaler::identity(cols);
}

Scaler fit_response_scaler(const Eigen::VectorXd& y) {
  if (y.size() == 0) throw Error(ErrorCode::invalid_argument, "cannot fit a scaler on an empty response");
  const Eigen::MatrixXd col = y;
  const double mean = column_mean(col, 0);
  const double sd = column_stddev(col, 0, mean);
  return Scaler::meanstd({mean}, {sd > 0.0 ? sd : 1.0});
}

}  // namespace ivams
