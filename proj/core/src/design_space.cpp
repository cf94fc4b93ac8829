#include "ivams/design_space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ivams/error.hpp"
#include "ivams/rng.hpp"

namespace ivams {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || digit(c); });
}

DesignSpace::DesignSpace(std::vector<DesignVariable> variables) : variables_(std::move(variables)) {
  if (variables_.empty()) {
    throw Error(ErrorCode::invalid_argument, "design space needs at least one variable");
  }
  std::set<std::string, std::less<>> seen;
  for (const auto& v : variables_) {
    if (!is_identifier(v.name)) {
      throw Error(ErrorCode::invalid_argument, "design variable name '" + v.name + "' is not an identifier");
    }
    if (!seen.insert(v.name).second) {
      throw Error(ErrorCode::invalid_argument, "duplicate design variable '" + v.name + "'");
    }
    if (!std::isfinite(v.lower) || !std::isfinite(v.upper) || !(v.lower < v.upper)) {
      throw Error(ErrorCode::invalid_argument, "design variable '" + v.name + "' needs finite lower < upper");
    }
  }
}

std::vector<std::string> DesignSpace::names() const {
  std::vector<std::string> out;
  out.reserve(variables_.size());
  for (const auto& v : variables_) out.push_back(v.name);
  return out;
}

std::size_t DesignSpace::find(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return i;
  }
  return variables_.size();
}

bool DesignSpace::contains(std::span<const double> x) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!(x[i] >= variables_[i].lower && x[i] <= variables_[i].upper)) return false;
  }
  return true;
}

Eigen::VectorXd DesignSpace::midpoint() const {
  Eigen::VectorXd m(dim());
  for (std::size_t i = 0; i < dim(); ++i) m[i] = 0.5 * (variables_[i].lower + variables_[i].upper);
  return m;
}

void DesignSpace::clamp(std::span<double> x) const {
  for (std::size_t i = 0; i < dim() && i < x.size(); ++i) {
    x[i] = std::clamp(x[i], variables_[i].lower, variables_[i].upper);
  }
}

double DesignSpace::to_unit(std::size_t i, double value) const {
  return (value - variables_[i].lower) / variables_[i].width();
}

double DesignSpace::from_unit(std::size_t i, double t) const {
  return std::clamp(variables_[i].lower + t * variables_[i].width(), variables_[i].lower, variables_[i].upper);
}

DesignSpace DesignSpace::from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("design space JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("design_space")) j = j["design_space"];
  if (!j.is_array()) throw Error(ErrorCode::parse_error, "design space must be a JSON array of {name, lower, upper}");
  std::vector<DesignVariable> vars;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("name") || !item.contains("lower") || !item.contains("upper")) {
      throw Error(ErrorCode::parse_error, "design variable entries need name, lower and upper");
    }
    try {
      vars.push_back({item["name"].get<std::string>(), item["lower"].get<double>(), item["upper"].get<double>()});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::parse_error, std::string("design variable entry: ") + e.what());
    }
  }
  return DesignSpace(std::move(vars));
}

DesignSpace DesignSpace::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string DesignSpace::to_json_text() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& v : variables_) j.push_back({{"name", v.name}, {"lower", v.lower}, {"upper", v.upper}});
  return j.dump(2);
}

SampleMatrix lhs_sample(const DesignSpace& space, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "lhs_sample needs n >= 1");
  const std::size_t dim = space.dim();
  SampleMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  Rng rng(seed);
  std::vector<std::size_t> strata(n);
  const double dn = static_cast<double>(n);
  for (std::size_t c = 0; c < dim; ++c) {
    std::iota(strata.begin(), strata.end(), std::size_t{0});
    shuffle(strata.begin(), strata.end(), rng);
    const auto& var = space[c];
    for (std::size_t r = 0; r < n; ++r) {
      const double k = static_cast<double>(strata[r]);
      // Stay strictly inside [k/n, (k+1)/n) even when rounding pushes toward the upper edge.
      const double lo = var.lower + var.width() * (k / dn);
      const double hi = var.lower + var.width() * ((k + 1.0) / dn);
      double x = lo + (hi - lo) * rng.uniform();
      if (strata[r] + 1 < n && x >= hi) x = std::nextafter(hi, lo);
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = std::clamp(x, var.lower, var.upper);
    }
  }
  return out;
}

namespace {

bool shares_row(const SampleMatrix& a, const SampleMatrix& b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      if ((a.row(i).array() == b.row(j).array()).all()) return true;
    }
  }
  return false;
}

}  // namespace

SampleMatrix lhs_disjoint(const DesignSpace& space, std::size_t n, const SampleMatrix& training,
                          std::uint64_t seed) {
  if (training.rows() == 0) throw Error(ErrorCode::invalid_argument, "lhs_disjoint needs a nonempty training set");
  if (static_cast<std::size_t>(training.cols()) != space.dim()) {
    throw Error(ErrorCode::dimension_mismatch, "training matrix has " + std::to_string(training.cols()) +
                                                   " columns, design space has " + std::to_string(space.dim()));
  }
  constexpr std::uint64_t kMaxAttempts = 64;
  for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    SampleMatrix candidate = lhs_sample(space, n, Rng::derive(seed, 0xd15 + attempt));
    if (!shares_row(candidate, training)) return candidate;
  }
  throw Error(ErrorCode::invalid_argument, "could not draw a verification set disjoint from the training set");
}

}  // namespace ivams
