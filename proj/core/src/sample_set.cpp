#include "ivams/sample_set.hpp"

#include <cmath>

#include "ivams/error.hpp"

namespace ivams {

SampleSet::SampleSet(std::vector<std::string> variable_names, SampleMatrix inputs, Provenance provenance)
    : variable_names_(std::move(variable_names)), inputs_(std::move(inputs)), provenance_(provenance) {
  if (variable_names_.size() != static_cast<std::size_t>(inputs_.cols())) {
    throw Error(ErrorCode::dimension_mismatch, "sample set has " + std::to_string(inputs_.cols()) +
                                                   " input columns but " + std::to_string(variable_names_.size()) +
                                                   " variable names");
  }
  if (!inputs_.allFinite()) throw Error(ErrorCode::invalid_argument, "sample inputs must be finite");
}

void SampleSet::add_response(std::string name, Eigen::VectorXd values) {
  if (static_cast<std::size_t>(values.size()) != rows()) {
    throw Error(ErrorCode::dimension_mismatch, "response '" + name + "' has " + std::to_string(values.size()) +
                                                   " values for " + std::to_string(rows()) + " rows");
  }
  if (!values.allFinite()) throw Error(ErrorCode::invalid_argument, "response '" + name + "' has non-finite values");
  if (has_response(name)) throw Error(ErrorCode::invalid_argument, "duplicate response '" + name + "'");
  response_names_.push_back(std::move(name));
  responses_.push_back(std::move(values));
}

bool SampleSet::has_response(std::string_view name) const {
  for (const auto& n : response_names_) {
    if (n == name) return true;
  }
  return false;
}

const Eigen::VectorXd& SampleSet::response(std::string_view name) const {
  for (std::size_t i = 0; i < response_names_.size(); ++i) {
    if (response_names_[i] == name) return responses_[i];
  }
  throw Error(ErrorCode::missing_response, "no response named '" + std::string(name) + "'");
}

SampleSet SampleSet::select(std::span<const std::size_t> rows) const {
  SampleMatrix in(static_cast<Eigen::Index>(rows.size()), inputs_.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) in.row(static_cast<Eigen::Index>(i)) = inputs_.row(static_cast<Eigen::Index>(rows[i]));
  SampleSet out(variable_names_, std::move(in), provenance_);
  for (std::size_t k = 0; k < responses_.size(); ++k) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) v[static_cast<Eigen::Index>(i)] = responses_[k][static_cast<Eigen::Index>(rows[i])];
    out.add_response(response_names_[k], std::move(v));
  }
  return out;
}

}  // namespace ivams
