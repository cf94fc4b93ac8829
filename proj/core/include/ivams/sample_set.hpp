#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ivams/design_space.hpp"

namespace ivams {

enum class Provenance { oracle, imported };

/// Design points paired with named response columns.
class SampleSet {
 public:
  SampleSet() = default;
  SampleSet(std::vector<std::string> variable_names, SampleMatrix inputs, Provenance provenance = Provenance::oracle);

  /// Adds a response column. Throws on a length mismatch, a non-finite value
  /// or a duplicate name.
  void add_response(std::string name, Eigen::VectorXd values);

  std::size_t rows() const { return static_cast<std::size_t>(inputs_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(inputs_.cols()); }
  const SampleMatrix& inputs() const { return inputs_; }
  const std::vector<std::string>& variable_names() const { return variable_names_; }
  const std::vector<std::string>& response_names() const { return response_names_; }
  Provenance provenance() const { return provenance_; }

  bool has_response(std::string_view name) const;
  /// Throws Error(missing_response) when absent.
  const Eigen::VectorXd& response(std::string_view name) const;

  /// Subset of rows, in the given order.
  SampleSet select(std::span<const std::size_t> rows) const;

 private:
  std::vector<std::string> variable_names_;
  SampleMatrix inputs_;
  std::vector<std::string> response_names_;
  std::vector<Eigen::VectorXd> responses_;
  Provenance provenance_ = Provenance::oracle;
};

/// Writes a header row (variable names, then response names) followed by one
/// row per sample, every value at 17 significant digits.
void save_csv(const SampleSet& set, const std::filesystem::path& path);
std::string to_csv(const SampleSet& set);

/// Reads a SampleSet whose leading columns must be exactly `variable_names`.
/// When `response_names` is given, the remaining header must match it
/// exactly; otherwise every remaining column is taken as a response.
SampleSet load_csv(const std::filesystem::path& path, std::span<const std::string> variable_names,
                   std::optional<std::vector<std::string>> response_names = std::nullopt);
SampleSet parse_csv(std::string_view text, std::span<const std::string> variable_names,
                    std::optional<std::vector<std::string>> response_names = std::nullopt);

/// Shortest text with 17 significant digits that round-trips a double.
std::string format_double(double value);

}  // namespace ivams
