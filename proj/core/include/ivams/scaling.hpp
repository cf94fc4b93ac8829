#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace ivams {

enum class ScalerKind { none, meanstd, minmax };

std::string_view to_string(ScalerKind kind);
ScalerKind parse_scaler_kind(std::string_view text);

/// Per-column affine transform fitted on training data.
///
/// meanstd maps a column to mean 0 / sample stddev 1; minmax maps the
/// training range onto [-1, 1]. Data scaled later (verification points, new
/// designs) reuses the stored statistics and may fall outside [-1, 1].
class Scaler {
 public:
  Scaler() = default;

  /// Identity transform on `columns` columns.
  static Scaler identity(std::size_t columns);
  /// meanstd from explicit statistics; every stddev must be > 0.
  static Scaler meanstd(std::vector<double> mean, std::vector<double> stddev);
  /// minmax from explicit statistics; every max must exceed its min.
  static Scaler minmax(std::vector<double> min, std::vector<double> max);

  ScalerKind kind() const { return kind_; }
  std::size_t columns() const { return first_.size(); }

  /// (mean, stddev) for meanstd, (min, max) for minmax, empty/unused for none.
  const std::vector<double>& first() const { return first_; }
  const std::vector<double>& second() const { return second_; }

  /// x' = gain * x + offset, per column.
  double gain(std::size_t column) const;
  double offset(std::size_t column) const;

  Eigen::MatrixXd apply(const Eigen::MatrixXd& data) const;
  Eigen::MatrixXd invert(const Eigen::MatrixXd& data) const;
  void apply_in_place(std::span<double> row) const;
  double apply(std::size_t column, double value) const;
  double invert(std::size_t column, double value) const;

  bool operator==(const Scaler&) const = default;

 private:
  ScalerKind kind_ = ScalerKind::none;
  std::vector<double> first_;
  std::vector<double> second_;
};

/// Fits a scaler on the columns of `data`. A constant column raises
/// Error(degenerate_column) naming it (from `names` when provided).
Scaler fit_scaler(const Eigen::MatrixXd& data, ScalerKind kind, std::span<const std::string> names = {});

/// Output scaler used for ANN training: meanstd, except that a constant
/// response is only centered (stddev taken as 1).
Scaler fit_response_scaler(const Eigen::VectorXd& y);

}  // namespace ivams
