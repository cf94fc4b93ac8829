#include "ivams/vams_codegen.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "ivams/error.hpp"
#include "ivams/sample_set.hpp"

namespace ivams {

namespace {

std::string join_values(const double* v, std::size_t n) {
  std::string out;
  for (std::size_t k = 0; k < n; ++k) {
    out += format_double(v[k]);
    out += '\n';
  }
  return out;
}

std::vector<double> parse_values(const std::string& text, const std::string& file, std::size_t expected) {
  std::vector<double> values;
  std::size_t pos = 0;
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  while (pos < text.size()) {
    while (pos < text.size() && is_space(text[pos])) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !is_space(text[end])) ++end;
    const std::string_view token(text.data() + pos, end - pos);
    double v = 0.0;
    const char* first = token.data();
    if (!token.empty() && token.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::parse_error, file + ": non-numeric token '" + std::string(token) + "'");
    }
    values.push_back(v);
    pos = end;
  }
  if (values.size() != expected) {
    throw Error(ErrorCode::count_mismatch,
                file + ": expected " + std::to_string(expected) + " values, found " + std::to_string(values.size()));
  }
  return values;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_verilog_keyword(const std::string& s) {
  static const std::set<std::string> kw = {
      "analog", "begin", "end", "module", "endmodule", "function", "endfunction", "initial", "input", "output",
      "inout", "integer", "real", "parameter", "electrical", "ground", "if", "else", "for", "while", "from",
      "exclude", "wire", "reg", "string", "ddt", "idt", "laplace_nd", "tanh", "exp", "case", "default", "genvar"};
  return kw.count(s) > 0;
}

std::string coeff_list(const std::vector<double>& c) {
  std::string out = "{";
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k) out += ", ";
    out += format_double(c[k]);
  }
  return out + "}";
}

}  // namespace

WeightBundle export_weights(const AnnModel& model, const std::string& prefix) {
  model.validate();
  if (model.activation != Activation::tanh) {
    throw Error(ErrorCode::invalid_argument, "only tanh networks can be exported; nn_metamodel hard-codes tanh");
  }
  const AnnModel f = fold_scalers(model);
  WeightBundle b;
  b.prefix = prefix;
  b.nl = f.hidden_size();
  b.size_x = f.input_dim();
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> w1 = f.w1;
  b.w1 = join_values(w1.data(), b.nl * b.size_x);
  b.w2 = join_values(f.w2.data(), b.nl);
  b.b1 = join_values(f.b1.data(), b.nl);
  b.b2 = join_values(&f.b2, 1);
  return b;
}

std::vector<std::filesystem::path> write_weight_bundle(const WeightBundle& bundle, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::vector<std::filesystem::path> paths;
  const std::pair<const char*, const std::string*> files[] = {
      {"w1", &bundle.w1}, {"w2", &bundle.w2}, {"b1", &bundle.b1}, {"b2", &bundle.b2}};
  for (const auto& [stem, text] : files) {
    const auto path = dir / bundle.file_name(stem);
    std::ofstream out(path, std::ios::binary);
    out << *text;
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
    paths.push_back(path);
  }
  return paths;
}

WeightBundle read_weight_bundle(const std::filesystem::path& dir, const std::string& prefix, std::size_t nl,
                                std::size_t size_x) {
  WeightBundle b;
  b.prefix = prefix;
  b.nl = nl;
  b.size_x = size_x;
  b.w1 = read_file(dir / b.file_name("w1"));
  b.w2 = read_file(dir / b.file_name("w2"));
  b.b1 = read_file(dir / b.file_name("b1"));
  b.b2 = read_file(dir / b.file_name("b2"));
  return b;
}

AnnModel import_weights(const WeightBundle& bundle) {
  if (bundle.nl == 0 || bundle.size_x == 0) throw Error(ErrorCode::invalid_argument, "weight bundle dims must be > 0");
  const auto w1 = parse_values(bundle.w1, bundle.file_name("w1"), bundle.nl * bundle.size_x);
  const auto w2 = parse_values(bundle.w2, bundle.file_name("w2"), bundle.nl);
  const auto b1 = parse_values(bundle.b1, bundle.file_name("b1"), bundle.nl);
  const auto b2 = parse_values(bundle.b2, bundle.file_name("b2"), 1);
  AnnModel m = AnnModel::zeros(bundle.size_x, bundle.nl, Activation::tanh);
  m.role = ModelRole::cpm;
  for (std::size_t j = 0; j < bundle.nl; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    for (std::size_t i = 0; i < bundle.size_x; ++i) m.w1(jj, static_cast<Eigen::Index>(i)) = w1[j * bundle.size_x + i];
    m.w2[jj] = w2[j];
    m.b1[jj] = b1[j];
  }
  m.b2 = b2[0];
  return m;
}

void MacromodelSpec::validate() const {
  if (!is_identifier(module_name) || is_verilog_keyword(module_name)) {
    throw Error(ErrorCode::invalid_argument, "bad module name '" + module_name + "'");
  }
  if (ports.size() != 3) throw Error(ErrorCode::invalid_argument, "macromodel needs exactly 3 ports (inp, inn, out)");
  const DesignSpace space(design_variables);
  std::set<std::string> names;
  auto claim = [&](const std::string& n) {
    if (!is_identifier(n) || is_verilog_keyword(n) || !names.insert(n).second) {
      throw Error(ErrorCode::invalid_argument, "bad or duplicate identifier '" + n + "'");
    }
  };
  for (const auto& p : ports) claim(p);
  for (const auto& v : space.names()) claim(v);
  std::set<std::string> prefixes;
  for (const auto& p : parameters) {
    claim(p.name);
    if (!prefixes.insert(p.prefix).second) throw Error(ErrorCode::invalid_argument, "duplicate weight prefix '" + p.prefix + "'");
  }
  for (const char* n : {"x", "vd", "iout", "n1", "r_out", "c_out"}) claim(n);
  if (numerator.empty() || denominator.empty() || denominator.front() == 0.0) {
    throw Error(ErrorCode::invalid_argument, "H(s) needs numerator and denominator with a nonzero constant term");
  }
  if (!(r_out > 0.0) || !(c_out > 0.0)) throw Error(ErrorCode::invalid_argument, "r_out and c_out must be > 0");
}

std::string emit_vams_module(const MacromodelSpec& spec, const std::map<std::string, WeightBundle>& bundles) {
  spec.validate();
  const std::size_t n = spec.design_variables.size();
  for (const auto& p : spec.parameters) {
    const auto it = bundles.find(p.name);
    if (it == bundles.end()) throw Error(ErrorCode::invalid_argument, "missing weight bundle for '" + p.name + "'");
    if (it->second.size_x != n) {
      throw Error(ErrorCode::dimension_mismatch, "bundle '" + p.name + "' has " + std::to_string(it->second.size_x) +
                                                     " inputs, design space has " + std::to_string(n));
    }
  }
  const auto& inp = spec.ports[0];
  const auto& inn = spec.ports[1];
  const auto& out = spec.ports[2];
  auto path = [&](const WeightBundle& b, const char* stem) {
    std::string dir = spec.weight_dir;
    if (!dir.empty() && dir.back() != '/') dir += '/';
    return "\"" + dir + b.file_name(stem) + "\"";
  };

  std::ostringstream s;
  s << "`include \"disciplines.vams\"\n\n";
  s << "module " << spec.module_name << "(" << inp << ", " << inn << ", " << out << ");\n";
  s << "  inout " << inp << ", " << inn << ", " << out << ";\n";
  s << "  electrical " << inp << ", " << inn << ", " << out << ", n1;\n\n";
  for (const auto& v : spec.design_variables) {
    s << "  parameter real " << v.name << " = " << format_double(0.5 * (v.lower + v.upper)) << " from ["
      << format_double(v.lower) << ":" << format_double(v.upper) << "];\n";
  }
  s << "  parameter real r_out = " << format_double(spec.r_out) << ";\n";
  s << "  parameter real c_out = " << format_double(spec.c_out) << ";\n\n";
  s << "  real x[0:" << n - 1 << "];\n";
  s << "  real";
  for (std::size_t k = 0; k < spec.parameters.size(); ++k) s << (k ? ", " : " ") << spec.parameters[k].name;
  s << ";\n";
  s << "  real vd, iout;\n\n";

  s << "  function real nn_metamodel;\n";
  s << "    input fw1, fw2, fb1, fb2, nl, size_x;\n";
  s << "    string fw1, fw2, fb1, fb2;\n";
  s << "    integer nl, size_x;\n";
  s << "    integer w1, w2, b1, b2, i, j, readfile;\n";
  s << "    real w, b, v, u;\n";
  s << "    // Read metamodel weights and bias from\n";
  s << "    // text files w1, w2, b1, and b2.\n";
  s << "    begin\n";
  s << "      w1 = $fopen(fw1, \"r\");\n";
  s << "      w2 = $fopen(fw2, \"r\");\n";
  s << "      b1 = $fopen(fb1, \"r\");\n";
  s << "      b2 = $fopen(fb2, \"r\");\n";
  s << "      v = 0.0;\n";
  s << "      for (j = 0; j < nl; j = j + 1)\n";
  s << "      begin\n";
  s << "        u = 0.0;\n";
  s << "        for (i = 0; i < size_x; i = i + 1)\n";
  s << "        begin\n";
  s << "          readfile = $fscanf(w1, \"%e\", w);\n";
  s << "          u = u + w * x[i];\n";
  s << "        end\n";
  s << "        readfile = $fscanf(w2, \"%e\", w);\n";
  s << "        readfile = $fscanf(b1, \"%e\", b);\n";
  s << "        v = v + w * tanh(u + b);\n";
  s << "      end\n";
  s << "      readfile = $fscanf(b2, \"%e\", b);\n";
  s << "      nn_metamodel = v + b;\n";
  s << "      $fclose(w1);\n";
  s << "      $fclose(w2);\n";
  s << "      $fclose(b1);\n";
  s << "      $fclose(b2);\n";
  s << "    end\n";
  s << "  endfunction\n\n";

  s << "  initial begin\n";
  for (std::size_t i = 0; i < n; ++i) s << "    x[" << i << "] = " << spec.design_variables[i].name << ";\n";
  for (const auto& p : spec.parameters) {
    const auto& b = bundles.at(p.name);
    s << "    " << p.name << " = " << format_double(p.unit) << " * nn_metamodel(" << path(b, "w1") << ", "
      << path(b, "w2") << ", " << path(b, "b1") << ", " << path(b, "b2") << ", " << b.nl << ", " << b.size_x
      << ");\n";
  }
  s << "  end\n\n";

  // The clamp uses the first three circuit parameters as gm, I_p, I_n.
  const std::string gm = spec.parameters.size() > 0 ? spec.parameters[0].name : "1.0";
  const std::string ip = spec.parameters.size() > 1 ? spec.parameters[1].name : "1.0e30";
  const std::string in = spec.parameters.size() > 2 ? spec.parameters[2].name : ip;
  s << "  analog begin\n";
  s << "    vd = laplace_nd(V(" << inp << ", " << inn << "), " << coeff_list(spec.numerator) << ", "
    << coeff_list(spec.denominator) << ");\n";
  s << "    iout = " << gm << " * vd;\n";
  s << "    if (iout > " << ip << ")\n";
  s << "      iout = " << ip << ";\n";
  s << "    else if (iout < -" << in << ")\n";
  s << "      iout = -" << in << ";\n";
  s << "    I(n1) <+ -iout;\n";
  s << "    I(n1) <+ V(n1) / r_out;\n";
  s << "    I(n1) <+ c_out * ddt(V(n1));\n";
  s << "    V(" << out << ") <+ V(n1);\n";
  s << "  end\n";
  s << "endmodule\n";
  return s.str();
}

}  // namespace ivams
