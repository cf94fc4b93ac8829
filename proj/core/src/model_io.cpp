#include "ivams/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ivams/error.hpp"

namespace ivams {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "ivams-model";
constexpr int kVersion = 1;

json scaler_json(const Scaler& s) {
  return {{"kind", to_string(s.kind())}, {"first", s.first()}, {"second", s.second()}};
}

Scaler scaler_from(const json& j, std::size_t columns) {
  const auto kind = parse_scaler_kind(j.at("kind").get<std::string>());
  auto first = j.at("first").get<std::vector<double>>();
  auto second = j.at("second").get<std::vector<double>>();
  switch (kind) {
    case ScalerKind::none: return Scaler::identity(columns);
    case ScalerKind::meanstd: return Scaler::meanstd(std::move(first), std::move(second));
    case ScalerKind::minmax: return Scaler::minmax(std::move(first), std::move(second));
  }
  return Scaler::identity(columns);
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index c = 0; c < m.cols(); ++c) row[static_cast<std::size_t>(c)] = m(r, c);
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd matrix_from(const json& j, std::size_t cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto row = j[r].get<std::vector<double>>();
    if (row.size() != cols) throw Error(ErrorCode::parse_error, "matrix row length mismatch in model file");
    for (std::size_t c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
  }
  return m;
}

Eigen::VectorXd vector_from(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

std::string to_json_text(const ModelFile& file) {
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["family"] = family_name(file.model);
  j["role"] = to_string(role(file.model));
  j["response"] = response_name(file.model);
  j["variables"] = file.variable_names;
  if (const auto* a = std::get_if<AnnModel>(&file.model)) {
    j["inputs"] = a->input_dim();
    j["hidden"] = a->hidden_size();
    j["activation"] = to_string(a->activation);
    j["steepness"] = a->steepness;
    j["w1"] = matrix_json(a->w1);
    j["b1"] = to_std(a->b1);
    j["w2"] = to_std(a->w2);
    j["b2"] = a->b2;
    j["input_scaler"] = scaler_json(a->input_scaler);
    j["output_scaler"] = scaler_json(a->output_scaler);
  } else if (const auto* r = std::get_if<RbfModel>(&file.model)) {
    j["inputs"] = r->inputs;
    j["spread"] = r->spread;
    j["radial"] = "gaussian";
    j["centers"] = matrix_json(r->centers);
    j["weights"] = to_std(r->weights);
    j["bias"] = r->bias;
    j["input_scaler"] = scaler_json(r->input_scaler);
    j["output_scaler"] = scaler_json(r->output_scaler);
  } else {
    const auto& p = std::get<PolyModel>(file.model);
    j["inputs"] = p.inputs;
    j["degree"] = p.degree;
    j["terms"] = p.terms;
    j["coefficients"] = p.coefficients;
    j["input_scaler"] = scaler_json(p.input_scaler);
  }
  return j.dump(1);
}

ModelFile model_from_json_text(std::string_view text) {
  try {
    const json j = json::parse(text);
    if (j.value("format", "") != kFormat) throw Error(ErrorCode::parse_error, "not an ivams model file");
    if (j.value("version", 0) != kVersion) throw Error(ErrorCode::parse_error, "unsupported model file version");
    const auto family = j.at("family").get<std::string>();
    const auto inputs = j.at("inputs").get<std::size_t>();
    ModelFile file;
    file.variable_names = j.value("variables", std::vector<std::string>{});
    const auto model_role = parse_model_role(j.at("role").get<std::string>());
    const auto response = j.at("response").get<std::string>();
    if (family == "ann") {
      AnnModel a;
      a.activation = parse_activation(j.at("activation").get<std::string>());
      a.steepness = j.at("steepness").get<double>();
      a.w1 = matrix_from(j.at("w1"), inputs);
      a.b1 = vector_from(j.at("b1"));
      a.w2 = vector_from(j.at("w2"));
      a.b2 = j.at("b2").get<double>();
      a.input_scaler = scaler_from(j.at("input_scaler"), inputs);
      a.output_scaler = scaler_from(j.at("output_scaler"), 1);
      a.role = model_role;
      a.response_name = response;
      a.validate();
      file.model = std::move(a);
    } else if (family == "rbf") {
      RbfModel r;
      r.inputs = inputs;
      r.spread = j.at("spread").get<double>();
      r.centers = matrix_from(j.at("centers"), inputs);
      r.weights = vector_from(j.at("weights"));
      r.bias = j.at("bias").get<double>();
      r.input_scaler = scaler_from(j.at("input_scaler"), inputs);
      r.output_scaler = scaler_from(j.at("output_scaler"), 1);
      r.role = model_role;
      r.response_name = response;
      r.validate();
      file.model = std::move(r);
    } else if (family == "poly") {
      PolyModel p;
      p.inputs = inputs;
      p.degree = j.at("degree").get<int>();
      p.terms = j.at("terms").get<std::vector<std::vector<int>>>();
      p.coefficients = j.at("coefficients").get<std::vector<double>>();
      p.input_scaler = scaler_from(j.at("input_scaler"), inputs);
      p.role = model_role;
      p.response_name = response;
      p.validate();
      file.model = std::move(p);
    } else {
      throw Error(ErrorCode::parse_error, "unknown model family '" + family + "'");
    }
    if (!file.variable_names.empty() && file.variable_names.size() != inputs) {
      throw Error(ErrorCode::parse_error, "model file lists " + std::to_string(file.variable_names.size()) +
                                              " variables for " + std::to_string(inputs) + " inputs");
    }
    return file;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("model file: ") + e.what());
  }
}

void save_model(const ModelFile& file, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  out << to_json_text(file) << '\n';
  if (!out) throw Error(ErrorCode::io_error, "write failed for " + path.string());
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json_text(buf.str());
}

}  // namespace ivams
