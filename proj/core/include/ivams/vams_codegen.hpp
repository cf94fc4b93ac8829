#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ivams/design_space.hpp"
#include "ivams/metamodel.hpp"

namespace ivams {

/// The four whitespace-separated weight files read by nn_metamodel.
/// w1 is streamed hidden-neuron-major: (j=0: i=0..size_x-1), (j=1: ...), ...
struct WeightBundle {
  std::string prefix;  // file names are prefix + "w1.txt" etc.
  std::size_t nl = 0;
  std::size_t size_x = 0;
  std::string w1;
  std::string w2;
  std::string b1;
  std::string b2;

  std::string file_name(const std::string& stem) const { return prefix + stem + ".txt"; }
};

/// Folds the scalers into the weights and serializes at 17 significant
/// digits. logsig models are rejected.
WeightBundle export_weights(const AnnModel& model, const std::string& prefix = "");

/// Writes the four files into `dir` and returns their paths (w1, w2, b1, b2).
std::vector<std::filesystem::path> write_weight_bundle(const WeightBundle& bundle, const std::filesystem::path& dir);

WeightBundle read_weight_bundle(const std::filesystem::path& dir, const std::string& prefix, std::size_t nl,
                                std::size_t size_x);

/// Rebuilds the network the Verilog-AMS function evaluates. Throws
/// count_mismatch naming the offending file, or parse_error on a bad token.
AnnModel import_weights(const WeightBundle& bundle);

/// A circuit parameter computed in the initial block. The model output is
/// multiplied by `unit` to obtain SI units (e.g. 1e-3 for mS).
struct CircuitParameter {
  std::string name;
  std::string prefix;
  double unit = 1.0;
};

/// Two-stage behavioral op-amp: H(s) on the differential input feeds a
/// transconductor gm whose current is clamped to [-i_n, i_p] into an r/c
/// output node.
struct MacromodelSpec {
  std::string module_name = "opamp_meta";
  std::vector<std::string> ports = {"inp", "inn", "out"};
  std::vector<DesignVariable> design_variables;  // module parameters, x[] order
  std::vector<CircuitParameter> parameters = {{"gm", "gm_", 1e-3}, {"i_p", "ip_", 1e-6}, {"i_n", "in_", 1e-6}};
  // Default single-pole placeholder H(s) = 1 / (1 + s / (2π·1e6)).
  std::vector<double> numerator = {1.0};
  std::vector<double> denominator = {1.0, 1.5915494309189535e-07};
  double r_out = 1e6;
  double c_out = 1e-12;
  std::string weight_dir;  // path prepended to weight file names, may be empty

  void validate() const;
};

/// Deterministic module text. `bundles` is keyed by CircuitParameter::name.
std::string emit_vams_module(const MacromodelSpec& spec, const std::map<std::string, WeightBundle>& bundles);

}  // namespace ivams
