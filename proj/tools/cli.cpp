#include "ivams/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "ivams/abc.hpp"
#include "ivams/error.hpp"
#include "ivams/metrics.hpp"
#include "ivams/model_io.hpp"
#include "ivams/mofa.hpp"
#include "ivams/oracle.hpp"
#include "ivams/rng.hpp"
#include "ivams/sample_set.hpp"
#include "ivams/training.hpp"
#include "ivams/vams_codegen.hpp"

namespace ivams::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open config " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, path + ": " + e.what());
  }
}

const json& section(const json& config, const char* name) {
  static const json empty = json::object();
  const auto it = config.find(name);
  if (it == config.end()) return empty;
  if (!it->is_object()) throw Error(ErrorCode::parse_error, std::string("config section '") + name + "' must be an object");
  return *it;
}

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::parse_error, std::string("config key '") + key + "' has the wrong type");
  }
}

std::optional<Oracle> config_oracle(const json& config) {
  if (!config.contains("oracle")) return std::nullopt;
  return builtin_oracle(config.at("oracle").get<std::string>());
}

DesignSpace config_space(const json& config) {
  if (config.contains("design_space")) return DesignSpace::from_json_text(config.at("design_space").dump());
  if (auto oracle = config_oracle(config)) return oracle->space;
  throw Error(ErrorCode::invalid_argument, "config needs 'design_space' or 'oracle'");
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SampleSet load_data(const fs::path& path, const DesignSpace& space) {
  const auto names = space.names();
  return load_csv(path, names);
}

TrainOptions train_options(const json& t) {
  TrainOptions o;
  o.activation = parse_activation(get_or<std::string>(t, "activation", "tanh"));
  o.steepness = get_or(t, "steepness", o.steepness);
  o.max_epochs = get_or(t, "max_epochs", o.max_epochs);
  o.learning_rate = get_or(t, "learning_rate", o.learning_rate);
  o.momentum = get_or(t, "momentum", o.momentum);
  o.l2_penalty = get_or(t, "l2", o.l2_penalty);
  o.early_stop_patience = get_or(t, "patience", o.early_stop_patience);
  o.holdout_fraction = get_or(t, "holdout", o.holdout_fraction);
  o.input_scaling = parse_scaler_kind(get_or<std::string>(t, "input_scaling", "meanstd"));
  o.seed = get_or<std::uint64_t>(t, "seed", o.seed);
  return o;
}

std::vector<std::size_t> hidden_sizes(const json& t) {
  const auto it = t.find("hidden");
  if (it == t.end()) return {4};
  if (it->is_number_unsigned()) return {it->get<std::size_t>()};
  return it->get<std::vector<std::size_t>>();
}

std::vector<std::string> responses_to_train(const json& t, const SampleSet& data, const std::vector<std::string>& flag) {
  if (!flag.empty()) return flag;
  if (t.contains("responses")) return t.at("responses").get<std::vector<std::string>>();
  return data.response_names();
}

std::vector<std::string> cpm_names(const json& config) {
  std::vector<std::string> names = get_or<std::vector<std::string>>(section(config, "training"), "cpm", {});
  for (const auto& p : section(config, "vams").value("parameters", json::array())) {
    names.push_back(p.value("response", p.value("name", std::string())));
  }
  return names;
}

/// Loads <dir>/<response>.json and checks it matches the design space.
std::shared_ptr<const Metamodel> load_response_model(const fs::path& dir, const std::string& response,
                                                     const DesignSpace& space) {
  const auto path = dir / (response + ".json");
  if (!fs::exists(path)) throw Error(ErrorCode::io_error, "missing model " + path.string());
  ModelFile file = load_model(path);
  if (file.variable_names != space.names()) {
    throw Error(ErrorCode::dimension_mismatch, path.string() + ": design variables differ from the config");
  }
  return std::make_shared<const Metamodel>(std::move(file.model));
}

ResponseFn as_response(std::shared_ptr<const Metamodel> model) {
  return [model](std::span<const double> x) { return predict(*model, x); };
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  std::string config;
  std::string out;
  std::string verify_out;
  std::optional<std::size_t> n;
  std::optional<std::size_t> verify_n;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
  bool no_evaluate = false;
};

int cmd_sample(const SampleArgs& a, std::ostream&, std::ostream& err) {
  const json config = load_config(a.config);
  const json& s = section(config, "sampling");
  const DesignSpace space = config_space(config);
  const std::size_t n = a.n.value_or(get_or<std::size_t>(s, "n", 100));
  if (n == 0) throw UsageError("--n must be > 0");
  const std::uint64_t seed = a.seed.value_or(get_or<std::uint64_t>(s, "seed", 1));
  const bool evaluate_rows = !a.no_evaluate && get_or(s, "evaluate", true);
  auto oracle = config_oracle(config);

  auto produce = [&](const SampleMatrix& x) {
    if (evaluate_rows && oracle) {
      if (oracle->space.names() != space.names()) {
        throw Error(ErrorCode::dimension_mismatch, "design_space does not match oracle '" + oracle->name + "'");
      }
      return evaluate(*oracle, x, a.workers);
    }
    return SampleSet(space.names(), x);
  };

  const SampleMatrix x = lhs_sample(space, n, seed);
  save_csv(produce(x), a.out);
  err << "wrote " << a.out << " (" << n << " rows)\n";

  const std::string verify_out = a.verify_out.empty() ? get_or<std::string>(s, "verify_out", "") : a.verify_out;
  if (!verify_out.empty()) {
    const std::size_t vn = a.verify_n.value_or(get_or<std::size_t>(s, "verify_n", std::max<std::size_t>(1, n / 3)));
    if (vn == 0) throw UsageError("--verify-n must be > 0");
    const SampleMatrix v = lhs_disjoint(space, vn, x, Rng::derive(seed, 1));
    save_csv(produce(v), verify_out);
    err << "wrote " << verify_out << " (" << vn << " rows)\n";
  }
  return ok;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string config;
  std::string train;
  std::string verify;
  std::string out_dir;
  std::string family;
  std::vector<std::string> responses;
  std::vector<std::size_t> hidden;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
};

struct Trained {
  Metamodel model;
  FitReport report;
};

std::vector<Trained> train_family(const std::string& family, const json& t, const SampleSet& train,
                                  const SampleSet* verify, const std::string& response, ModelRole role,
                                  const std::vector<std::size_t>& hidden_flag, std::optional<std::uint64_t> seed,
                                  std::size_t workers) {
  std::vector<Trained> out;
  if (family == "ann") {
    TrainOptions opts = train_options(t);
    if (seed) opts.seed = *seed;
    opts.role = role;
    const auto sizes = hidden_flag.empty() ? hidden_sizes(t) : hidden_flag;
    auto fits = train_ann_sweep(train, response, opts, sizes, workers);
    for (auto& f : fits) {
      FitReport report = f.report;
      if (verify) {
        report = assess(f.model, train, *verify, report.model_descriptor);
        report.scaling = f.report.scaling;
        report.hidden = f.report.hidden;
      }
      out.push_back({std::move(f.model), report});
    }
  } else if (family == "rbf") {
    const json& r = section(t, "rbf");
    const auto sizes = hidden_flag.empty() ? std::vector<std::size_t>{get_or<std::size_t>(r, "max_neurons", train.rows())}
                                           : hidden_flag;
    for (std::size_t m : sizes) {
      auto fit = train_rbf(train, response, get_or(r, "error_goal", 0.0), get_or(r, "spread", 1.0), m,
                           parse_scaler_kind(get_or<std::string>(r, "input_scaling", "minmax")), verify);
      fit.model.role = role;
      out.push_back({std::move(fit.model), fit.report});
    }
  } else if (family == "poly") {
    const json& p = section(t, "poly");
    auto fit = fit_polynomial(train, response, get_or(p, "degree", 2), get_or(p, "stepwise", true),
                              get_or(p, "p_enter", 0.05),
                              parse_scaler_kind(get_or<std::string>(p, "input_scaling", "minmax")), verify);
    fit.model.role = role;
    out.push_back({std::move(fit.model), fit.report});
  } else {
    throw UsageError("unknown model family '" + family + "' (ann, rbf, poly)");
  }
  return out;
}

int cmd_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
  const json config = load_config(a.config);
  const json& t = section(config, "training");
  const DesignSpace space = config_space(config);
  const SampleSet train = load_data(a.train, space);
  std::optional<SampleSet> verify;
  if (!a.verify.empty()) verify = load_data(a.verify, space);
  const std::string family = a.family.empty() ? get_or<std::string>(t, "family", "ann") : a.family;
  const auto cpms = cpm_names(config);
  fs::create_directories(a.out_dir);

  std::vector<FitReport> all;
  for (const auto& response : responses_to_train(t, train, a.responses)) {
    train.response(response);  // missing_response before any work
    const ModelRole role =
        std::find(cpms.begin(), cpms.end(), response) != cpms.end() ? ModelRole::cpm : ModelRole::pmm;
    auto fits = train_family(family, t, train, verify ? &*verify : nullptr, response, role, a.hidden, a.seed,
                             a.workers);
    std::vector<FitReport> reports;
    for (const auto& f : fits) reports.push_back(f.report);
    const std::size_t best = select_best(reports, SelectionCriterion::verify_rmse);
    save_model(ModelFile{fits[best].model, space.names()}, fs::path(a.out_dir) / (response + ".json"));
    all.insert(all.end(), reports.begin(), reports.end());
    err << response << ": kept " << reports[best].model_descriptor << " with " << reports[best].parameters
        << " parameters\n";
  }
  write_text(fs::path(a.out_dir) / "reports.json", to_json_text(all));
  out << render_table(all);
  return ok;
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  std::string reports;
  std::string config;
  std::string model;
  std::string train;
  std::string verify;
};

int cmd_report(const ReportArgs& a, std::ostream& out, std::ostream&) {
  if (!a.reports.empty()) {
    const auto reports = fit_reports_from_json_text(read_text(a.reports));
    out << render_table(reports);
    return ok;
  }
  if (a.model.empty() || a.train.empty() || a.verify.empty() || a.config.empty()) {
    throw UsageError("report needs --reports, or --config, --model, --train and --verify");
  }
  const json config = load_config(a.config);
  const DesignSpace space = config_space(config);
  const ModelFile file = load_model(a.model);
  if (file.variable_names != space.names()) {
    throw Error(ErrorCode::dimension_mismatch, a.model + ": design variables differ from the config");
  }
  const SampleSet train = load_data(a.train, space);
  const SampleSet verify = load_data(a.verify, space);
  const std::vector<FitReport> reports{assess(file.model, train, verify, std::string(family_name(file.model)))};
  out << render_table(reports);
  return ok;
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
  std::string config;
  std::string models;
  std::string out;
  std::string design_out;
  std::string mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> iterations;
};

int cmd_optimize_mofa(const OptimizeArgs& a, std::ostream& out, std::ostream& err) {
  const json config = load_config(a.config);
  const json& m = section(config, "mofa");
  const DesignSpace space = config_space(config);
  if (!m.contains("objectives") || m.at("objectives").empty()) {
    throw Error(ErrorCode::invalid_argument, "mofa section needs at least one objective");
  }
  std::vector<ObjectiveSpec> objectives;
  std::vector<std::string> objective_names;
  for (const auto& o : m.at("objectives")) {
    const auto name = o.at("name").get<std::string>();
    objectives.push_back({name, parse_direction(o.value("direction", "minimize")),
                          as_response(load_response_model(a.models, name, space))});
    objective_names.push_back(name);
  }
  std::vector<ConstraintSpec> constraints;
  std::vector<std::string> constraint_names;
  for (const auto& c : m.value("constraints", json::array())) {
    const auto name = c.at("name").get<std::string>();
    constraints.push_back({name, as_response(load_response_model(a.models, name, space)), c.at("bound").get<double>(),
                           parse_sense(c.value("sense", ">"))});
    constraint_names.push_back(name);
  }
  MofaParams p;
  p.population = get_or(m, "population", p.population);
  p.t_max = a.iterations.value_or(get_or(m, "t_max", p.t_max));
  p.beta0 = get_or(m, "beta0", p.beta0);
  p.gamma = get_or(m, "gamma", p.gamma);
  p.alpha = get_or(m, "alpha", p.alpha);
  p.alpha_decay = get_or(m, "alpha_decay", p.alpha_decay);
  p.max_regen = get_or(m, "max_regen", p.max_regen);
  p.seed = a.seed.value_or(get_or<std::uint64_t>(m, "seed", p.seed));

  const MofaResult result = mofa_optimize(space, objectives, constraints, p);
  const auto names = space.names();
  const std::string csv = archive_to_csv(result.archive, names, objective_names, constraint_names);
  write_text(a.out, csv);
  err << "archive: " << result.archive.size() << " designs after " << result.iterations << " iterations -> " << a.out
      << "\n";
  out << csv;
  return ok;
}

int cmd_optimize_abc(const OptimizeArgs& a, std::ostream& out, std::ostream& err) {
  const json config = load_config(a.config);
  const json& b = section(config, "abc");
  const DesignSpace space = config_space(config);
  FomProblem problem;
  for (const auto& o : b.value("objective", json::array())) {
    const auto name = o.at("name").get<std::string>();
    problem.objective.push_back({name, as_response(load_response_model(a.models, name, space)),
                                 o.value("weight", 1.0), o.value("scale", 1.0)});
  }
  if (problem.objective.empty()) throw Error(ErrorCode::invalid_argument, "abc section needs an objective");
  for (const auto& w : b.value("windows", json::array())) {
    const auto name = w.at("name").get<std::string>();
    problem.windows.push_back({name, as_response(load_response_model(a.models, name, space)),
                               w.at("center").get<double>(), w.value("tolerance", 0.005)});
  }
  problem.penalty_weight = get_or(b, "penalty", problem.penalty_weight);
  AbcParams p;
  p.colony_size = get_or(b, "colony", p.colony_size);
  p.limit = get_or(b, "limit", p.limit);
  p.max_cycles = a.iterations.value_or(get_or(b, "cycles", p.max_cycles));
  p.seed = a.seed.value_or(get_or<std::uint64_t>(b, "seed", p.seed));

  const AbcResult result = abc_optimize(space, problem, p);
  write_text(a.out, trace_to_csv(result.trace));
  std::string design;
  const auto names = space.names();
  for (std::size_t i = 0; i < names.size(); ++i) design += names[i] + ",";
  design += "objective,feasible\n";
  for (Eigen::Index i = 0; i < result.best_design.size(); ++i) design += format_double(result.best_design[i]) + ",";
  design += format_double(result.best_objective) + "," + (result.feasible ? "1" : "0") + "\n";
  if (!a.design_out.empty()) write_text(a.design_out, design);
  err << "best objective " << format_double(result.best_objective) << (result.feasible ? "" : " (infeasible)")
      << " after " << result.trace.size() << " cycles -> " << a.out << "\n";
  out << design;
  return ok;
}

// ---------------------------------------------------------------- emit-vams

struct EmitArgs {
  std::string config;
  std::string models;
  std::string out_dir;
};

int cmd_emit_vams(const EmitArgs& a, std::ostream&, std::ostream& err) {
  const json config = load_config(a.config);
  const json& v = section(config, "vams");
  const DesignSpace space = config_space(config);
  MacromodelSpec spec;
  spec.design_variables = space.variables();
  spec.module_name = get_or(v, "module", spec.module_name);
  spec.ports = get_or(v, "ports", spec.ports);
  spec.numerator = get_or(v, "numerator", spec.numerator);
  spec.denominator = get_or(v, "denominator", spec.denominator);
  spec.r_out = get_or(v, "r_out", spec.r_out);
  spec.c_out = get_or(v, "c_out", spec.c_out);
  spec.weight_dir = get_or(v, "weight_dir", spec.weight_dir);
  std::map<std::string, std::string> response_of = {{"gm", "gm"}, {"i_p", "Ip"}, {"i_n", "In"}};
  if (v.contains("parameters")) {
    spec.parameters.clear();
    response_of.clear();
    for (const auto& p : v.at("parameters")) {
      const auto name = p.at("name").get<std::string>();
      spec.parameters.push_back({name, p.value("prefix", name + "_"), p.value("unit", 1.0)});
      response_of[name] = p.value("response", name);
    }
  }
  std::map<std::string, WeightBundle> bundles;
  for (const auto& p : spec.parameters) {
    const auto model = load_response_model(a.models, response_of.at(p.name), space);
    const auto* ann = std::get_if<AnnModel>(model.get());
    if (!ann) throw Error(ErrorCode::invalid_argument, "circuit parameter '" + p.name + "' needs an ANN model");
    bundles[p.name] = export_weights(*ann, p.prefix);
    for (const auto& path : write_weight_bundle(bundles[p.name], a.out_dir)) err << "wrote " << path.string() << "\n";
  }
  const fs::path module_path = fs::path(a.out_dir) / (spec.module_name + ".vams");
  write_text(module_path, emit_vams_module(spec, bundles));
  err << "wrote " << module_path.string() << "\n";
  return ok;
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
  std::string config;
  std::string train;
  std::string verify;
  std::vector<std::string> responses;
  std::optional<int> degree;
  std::optional<std::size_t> hidden;
  std::optional<std::uint64_t> seed;
};

int cmd_compare(const CompareArgs& a, std::ostream& out, std::ostream&) {
  const json config = load_config(a.config);
  const json& t = section(config, "training");
  const json& c = section(config, "compare");
  const DesignSpace space = config_space(config);
  const SampleSet train = load_data(a.train, space);
  const SampleSet verify = load_data(a.verify, space);
  TrainOptions opts = train_options(t);
  if (a.seed) opts.seed = *a.seed;
  opts.hidden_size = a.hidden.value_or(get_or<std::size_t>(c, "hidden", hidden_sizes(t).front()));
  const int degree = a.degree.value_or(get_or(c, "degree", 4));
  const bool stepwise = get_or(c, "stepwise", true);
  const auto scaling = parse_scaler_kind(get_or<std::string>(c, "poly_input_scaling", "minmax"));

  std::vector<FitReport> reports;
  std::ostringstream summary;
  for (const auto& response : responses_to_train(t, train, a.responses)) {
    const AnnFit ann = train_ann(train, response, opts);
    FitReport ra = assess(ann.model, train, verify, ann.report.model_descriptor);
    ra.scaling = ann.report.scaling;
    ra.hidden = ann.report.hidden;
    const PolyFit poly = fit_polynomial(train, response, degree, stepwise, 0.05, scaling, &verify);
    reports.push_back(ra);
    reports.push_back(poly.report);
    const double gain = poly.report.rmse > 0.0 ? 100.0 * (1.0 - ra.rmse / poly.report.rmse) : 0.0;
    summary << response << ": ann rmse " << format_double(ra.rmse) << " (" << ra.parameters << " weights), poly rmse "
            << format_double(poly.report.rmse) << " (" << poly.report.parameters << " coefficients), ann improvement "
            << std::fixed << std::setprecision(1) << gain << "%\n";
    summary.unsetf(std::ios::floatfield);
  }
  out << render_table(reports) << summary.str();
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ivams: surrogate-assisted analog design optimization", "ivams"};
  app.require_subcommand(1);

  SampleArgs sample;
  auto* s = app.add_subcommand("sample", "Latin hypercube sample, evaluated by the configured oracle");
  s->add_option("--config", sample.config, "Project JSON config")->required();
  s->add_option("--out", sample.out, "Output CSV")->required();
  s->add_option("--n", sample.n, "Number of samples");
  s->add_option("--seed", sample.seed, "Random seed");
  s->add_option("--verify-out", sample.verify_out, "Also write a disjoint verification CSV");
  s->add_option("--verify-n", sample.verify_n, "Verification sample count");
  s->add_option("--workers", sample.workers, "Parallel oracle evaluations")->check(CLI::PositiveNumber);
  s->add_flag("--no-evaluate", sample.no_evaluate, "Write design points only");

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Train one metamodel per response and print the fit table");
  t->add_option("--config", train.config)->required();
  t->add_option("--train", train.train, "Training CSV")->required();
  t->add_option("--verify", train.verify, "Verification CSV");
  t->add_option("--out-dir", train.out_dir, "Directory for <response>.json and reports.json")->required();
  t->add_option("--family", train.family)->check(CLI::IsMember({"ann", "rbf", "poly"}));
  t->add_option("--response", train.responses, "Responses to train (default: config or all)");
  t->add_option("--hidden", train.hidden, "Hidden sizes to sweep");
  t->add_option("--seed", train.seed);
  t->add_option("--workers", train.workers)->check(CLI::PositiveNumber);

  ReportArgs report;
  auto* r = app.add_subcommand("report", "Print a fit table from reports.json or by assessing a model");
  r->add_option("--reports", report.reports);
  r->add_option("--config", report.config);
  r->add_option("--model", report.model);
  r->add_option("--train", report.train);
  r->add_option("--verify", report.verify);

  OptimizeArgs mofa;
  auto* om = app.add_subcommand("optimize-mofa", "Multi-objective firefly search over trained metamodels");
  OptimizeArgs abc;
  auto* oa = app.add_subcommand("optimize-abc", "Bee colony minimization of a weighted figure of merit");
  OptimizeArgs opt;
  auto* og = app.add_subcommand("optimize", "Run optimize-mofa or optimize-abc by --mode");
  for (auto [cmd, a] : {std::pair{om, &mofa}, std::pair{oa, &abc}, std::pair{og, &opt}}) {
    cmd->add_option("--config", a->config)->required();
    cmd->add_option("--models", a->models, "Directory holding <response>.json models")->required();
    cmd->add_option("--out", a->out, "Archive CSV (mofa) or trace CSV (abc)")->required();
    cmd->add_option("--seed", a->seed);
    cmd->add_option("--iterations", a->iterations, "t_max (mofa) or cycles (abc)");
  }
  oa->add_option("--design-out", abc.design_out, "Best design CSV");
  og->add_option("--design-out", opt.design_out, "Best design CSV (abc)");
  og->add_option("--mode", opt.mode)->required()->check(CLI::IsMember({"mofa", "abc"}));

  EmitArgs emit;
  auto* e = app.add_subcommand("emit-vams", "Export CPM weights and the Verilog-AMS meta-macromodel");
  e->add_option("--config", emit.config)->required();
  e->add_option("--models", emit.models)->required();
  e->add_option("--out-dir", emit.out_dir)->required();

  CompareArgs compare;
  auto* c = app.add_subcommand("compare", "ANN vs polynomial accuracy on the same data");
  c->add_option("--config", compare.config)->required();
  c->add_option("--train", compare.train)->required();
  c->add_option("--verify", compare.verify)->required();
  c->add_option("--response", compare.responses);
  c->add_option("--degree", compare.degree)->check(CLI::Range(1, 6));
  c->add_option("--hidden", compare.hidden)->check(CLI::PositiveNumber);
  c->add_option("--seed", compare.seed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (s->parsed()) return cmd_sample(sample, out, err);
    if (t->parsed()) return cmd_train(train, out, err);
    if (r->parsed()) return cmd_report(report, out, err);
    if (om->parsed()) return cmd_optimize_mofa(mofa, out, err);
    if (oa->parsed()) return cmd_optimize_abc(abc, out, err);
    if (og->parsed()) return opt.mode == "mofa" ? cmd_optimize_mofa(opt, out, err) : cmd_optimize_abc(opt, out, err);
    if (e->parsed()) return cmd_emit_vams(emit, out, err);
    if (c->parsed()) return cmd_compare(compare, out, err);
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << "\n";
    return usage;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return is_numerical(ex.code()) ? numerical : data_error;
  } catch (const nlohmann::json::exception& ex) {
    err << "error: config: " << ex.what() << "\n";
    return data_error;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return data_error;
  }
  return usage;
}

}  // namespace ivams::cli
