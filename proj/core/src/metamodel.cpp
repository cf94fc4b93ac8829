#include "ivams/metamodel.hpp"

#include <cmath>
#include <set>

#include "ivams/error.hpp"

namespace ivams {

std::string_view to_string(ModelRole role) { return role == ModelRole::pmm ? "pmm" : "cpm"; }

ModelRole parse_model_role(std::string_view text) {
  if (text == "pmm" || text == "PMM") return ModelRole::pmm;
  if (text == "cpm" || text == "CPM") return ModelRole::cpm;
  throw Error(ErrorCode::invalid_argument, "unknown model role '" + std::string(text) + "'");
}

std::string_view to_string(Activation a) { return a == Activation::tanh ? "tanh" : "logsig"; }

Activation parse_activation(std::string_view text) {
  if (text == "tanh" || text == "tansig") return Activation::tanh;
  if (text == "logsig") return Activation::logsig;
  throw Error(ErrorCode::invalid_argument, "unknown activation '" + std::string(text) + "'");
}

double activate(Activation a, double v) {
  return a == Activation::tanh ? std::tanh(v) : 1.0 / (1.0 + std::exp(-v));
}

namespace {

void check_input(std::span<const double> x, std::size_t dim) {
  if (x.size() != dim) {
    throw Error(ErrorCode::dimension_mismatch, "input has " + std::to_string(x.size()) + " values, model expects " +
                                                   std::to_string(dim));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "non-finite model input");
  }
}

void check_scaler(const Scaler& s, std::size_t columns, const char* what) {
  if (s.columns() != columns) {
    throw Error(ErrorCode::invalid_argument, std::string(what) + " scaler has " + std::to_string(s.columns()) +
                                                 " columns, expected " + std::to_string(columns));
  }
}

}  // namespace

void AnnModel::validate() const {
  const auto m = w1.rows();
  if (m == 0 || w1.cols() == 0) throw Error(ErrorCode::invalid_argument, "ANN needs at least one input and one neuron");
  if (b1.size() != m || w2.size() != m) throw Error(ErrorCode::invalid_argument, "ANN weight shapes are inconsistent");
  if (!w1.allFinite() || !b1.allFinite() || !w2.allFinite() || !std::isfinite(b2)) {
    throw Error(ErrorCode::invalid_argument, "ANN weights must be finite");
  }
  if (!(steepness > 0.0) || !std::isfinite(steepness)) throw Error(ErrorCode::invalid_argument, "ANN steepness must be > 0");
  check_scaler(input_scaler, input_dim(), "input");
  check_scaler(output_scaler, 1, "output");
}

AnnModel AnnModel::zeros(std::size_t inputs, std::size_t hidden, Activation activation) {
  AnnModel m;
  m.activation = activation;
  m.w1 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(hidden), static_cast<Eigen::Index>(inputs));
  m.b1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(hidden));
  m.w2 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(hidden));
  m.input_scaler = Scaler::identity(inputs);
  m.output_scaler = Scaler::identity(1);
  return m;
}

double predict_scaled(const AnnModel& model, std::span<const double> xs) {
  double y = model.b2;
  const auto n = model.w1.cols();
  for (Eigen::Index j = 0; j < model.w1.rows(); ++j) {
    double v = model.b1[j];
    for (Eigen::Index i = 0; i < n; ++i) v += model.w1(j, i) * xs[static_cast<std::size_t>(i)];
    y += model.w2[j] * activate(model.activation, model.steepness * v);
  }
  return y;
}

double predict(const AnnModel& model, std::span<const double> x) {
  check_input(x, model.input_dim());
  std::vector<double> xs(x.begin(), x.end());
  model.input_scaler.apply_in_place(xs);
  return model.output_scaler.invert(0, predict_scaled(model, xs));
}

AnnModel fold_scalers(const AnnModel& model) {
  AnnModel out = model;
  const auto n = model.w1.cols();
  for (Eigen::Index j = 0; j < model.w1.rows(); ++j) {
    double bias = model.b1[j];
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(i);
      bias += model.w1(j, i) * model.input_scaler.offset(c);
      out.w1(j, i) = model.steepness * model.w1(j, i) * model.input_scaler.gain(c);
    }
    out.b1[j] = model.steepness * bias;
  }
  // y = (z - offset) / gain for the output scaler
  const double g = model.output_scaler.gain(0);
  const double o = model.output_scaler.offset(0);
  out.w2 = model.w2 / g;
  out.b2 = (model.b2 - o) / g;
  out.steepness = 1.0;
  out.input_scaler = Scaler::identity(model.input_dim());
  out.output_scaler = Scaler::identity(1);
  return out;
}

void RbfModel::validate() const {
  if (inputs == 0) throw Error(ErrorCode::invalid_argument, "RBF model needs at least one input");
  if (centers.rows() != weights.size() || (centers.rows() > 0 && static_cast<std::size_t>(centers.cols()) != inputs)) {
    throw Error(ErrorCode::invalid_argument, "RBF center/weight shapes are inconsistent");
  }
  if (!(spread > 0.0) || !std::isfinite(spread)) throw Error(ErrorCode::invalid_argument, "RBF spread must be > 0");
  if (!centers.allFinite() || !weights.allFinite() || !std::isfinite(bias)) {
    throw Error(ErrorCode::invalid_argument, "RBF parameters must be finite");
  }
  check_scaler(input_scaler, inputs, "input");
  check_scaler(output_scaler, 1, "output");
}

double predict(const RbfModel& model, std::span<const double> x) {
  check_input(x, model.inputs);
  std::vector<double> xs(x.begin(), x.end());
  model.input_scaler.apply_in_place(xs);
  double y = model.bias;
  const double inv = 1.0 / model.spread;
  for (Eigen::Index k = 0; k < model.centers.rows(); ++k) {
    double r2 = 0.0;
    for (Eigen::Index i = 0; i < model.centers.cols(); ++i) {
      const double d = xs[static_cast<std::size_t>(i)] - model.centers(k, i);
      r2 += d * d;
    }
    y += model.weights[k] * std::exp(-r2 * inv * inv);
  }
  return model.output_scaler.invert(0, y);
}

void PolyModel::validate() const {
  if (inputs == 0) throw Error(ErrorCode::invalid_argument, "polynomial needs at least one input");
  if (degree < 1) throw Error(ErrorCode::invalid_argument, "polynomial degree must be >= 1");
  if (terms.size() != coefficients.size()) throw Error(ErrorCode::invalid_argument, "term/coefficient count mismatch");
  std::set<std::vector<int>> seen;
  for (const auto& t : terms) {
    if (t.size() != inputs) throw Error(ErrorCode::invalid_argument, "exponent vector length differs from input count");
    int total = 0;
    for (int e : t) {
      if (e < 0) throw Error(ErrorCode::invalid_argument, "negative exponent");
      total += e;
    }
    if (total > degree) throw Error(ErrorCode::invalid_argument, "term exceeds polynomial degree");
    if (!seen.insert(t).second) throw Error(ErrorCode::invalid_argument, "duplicate polynomial term");
  }
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw Error(ErrorCode::invalid_argument, "polynomial coefficients must be finite");
  }
  check_scaler(input_scaler, inputs, "input");
}

double predict(const PolyModel& model, std::span<const double> x) {
  check_input(x, model.inputs);
  std::vector<double> xs(x.begin(), x.end());
  model.input_scaler.apply_in_place(xs);
  double y = 0.0;
  for (std::size_t k = 0; k < model.terms.size(); ++k) {
    double p = model.coefficients[k];
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (int e = 0; e < model.terms[k][i]; ++e) p *= xs[i];
    }
    y += p;
  }
  return y;
}

double predict(const Metamodel& model, std::span<const double> x) {
  return std::visit([&](const auto& m) { return predict(m, x); }, model);
}

Eigen::VectorXd predict_rows(const Metamodel& model, const Eigen::MatrixXd& inputs) {
  Eigen::VectorXd out(inputs.rows());
  std::vector<double> row(static_cast<std::size_t>(inputs.cols()));
  for (Eigen::Index r = 0; r < inputs.rows(); ++r) {
    for (Eigen::Index c = 0; c < inputs.cols(); ++c) row[static_cast<std::size_t>(c)] = inputs(r, c);
    out[r] = predict(model, row);
  }
  return out;
}

const std::string& response_name(const Metamodel& model) {
  return std::visit([](const auto& m) -> const std::string& { return m.response_name; }, model);
}

ModelRole role(const Metamodel& model) {
  return std::visit([](const auto& m) { return m.role; }, model);
}

std::size_t input_dim(const Metamodel& model) {
  return std::visit([](const auto& m) { return m.input_dim(); }, model);
}

std::size_t parameter_count(const Metamodel& model) {
  return std::visit([](const auto& m) { return m.parameter_count(); }, model);
}

std::string_view family_name(const Metamodel& model) {
  switch (model.index()) {
    case 0: return "ann";
    case 1: return "rbf";
    default: return "poly";
  }
}

}  // namespace ivams
