#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace ivams {

/// Row = one design point, column = one design variable (declaration order).
using SampleMatrix = Eigen::MatrixXd;

struct DesignVariable {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;

  double width() const { return upper - lower; }
};

/// Ordered, validated set of bounded design variables. The declaration order
/// is the column order of every matrix, CSV file and weight file downstream.
class DesignSpace {
 public:
  /// Throws Error(invalid_argument) on an empty list, lower >= upper,
  /// non-finite bounds, a non-identifier name or a duplicate name.
  explicit DesignSpace(std::vector<DesignVariable> variables);

  std::size_t dim() const { return variables_.size(); }
  const std::vector<DesignVariable>& variables() const { return variables_; }
  const DesignVariable& operator[](std::size_t i) const { return variables_[i]; }
  std::vector<std::string> names() const;

  /// Index of the named variable, or dim() if absent.
  std::size_t find(std::string_view name) const;

  bool contains(std::span<const double> x) const;
  Eigen::VectorXd midpoint() const;
  void clamp(std::span<double> x) const;

  /// Map between design units and the unit cube.
  double to_unit(std::size_t i, double value) const;
  double from_unit(std::size_t i, double t) const;

  /// Parses a JSON array of {name, lower, upper} objects.
  static DesignSpace from_json_text(std::string_view text);
  static DesignSpace load(const std::filesystem::path& path);
  std::string to_json_text() const;

 private:
  std::vector<DesignVariable> variables_;
};

bool is_identifier(std::string_view s);

/// Latin hypercube sample: each column has exactly one point in each of the
/// n equal-width strata of [lower, upper], placed uniformly within its
/// stratum. Stratum permutations are drawn independently per column.
SampleMatrix lhs_sample(const DesignSpace& space, std::size_t n, std::uint64_t seed);

/// LHS sample of n rows sharing no row (exact equality) with `training`.
SampleMatrix lhs_disjoint(const DesignSpace& space, std::size_t n,
                          const SampleMatrix& training, std::uint64_t seed);

}  // namespace ivams
