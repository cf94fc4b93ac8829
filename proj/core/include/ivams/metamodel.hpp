#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "ivams/scaling.hpp"

namespace ivams {

/// Performance-metric metamodels feed optimizers; circuit-parameter
/// metamodels feed behavioral code generation. The math is identical.
enum class ModelRole { pmm, cpm };

enum class Activation { tanh, logsig };

std::string_view to_string(ModelRole role);
ModelRole parse_model_role(std::string_view text);
std::string_view to_string(Activation a);
Activation parse_activation(std::string_view text);

/// Single-hidden-layer feed-forward network with one linear output:
///
///   y = out⁻¹( b2 + Σ_j w2_j · f(λ · (b1_j + Σ_i W1_ji · in(x)_i)) )
///
/// where `in` / `out` are the input and output scalers.
struct AnnModel {
  Activation activation = Activation::tanh;
  double steepness = 1.0;
  Eigen::MatrixXd w1;  // hidden x inputs
  Eigen::VectorXd b1;  // hidden
  Eigen::VectorXd w2;  // hidden
  double b2 = 0.0;
  Scaler input_scaler;
  Scaler output_scaler;
  ModelRole role = ModelRole::pmm;
  std::string response_name;

  std::size_t input_dim() const { return static_cast<std::size_t>(w1.cols()); }
  std::size_t hidden_size() const { return static_cast<std::size_t>(w1.rows()); }
  std::size_t parameter_count() const { return hidden_size() * (input_dim() + 2) + 1; }

  /// Throws Error(invalid_argument) on inconsistent shapes, non-finite
  /// weights or a non-positive steepness.
  void validate() const;

  /// Unscaled zero-initialized model with identity scalers.
  static AnnModel zeros(std::size_t inputs, std::size_t hidden, Activation activation = Activation::tanh);
};

double activate(Activation a, double v);

/// Prediction in design units. Throws on a length mismatch or non-finite x.
double predict(const AnnModel& model, std::span<const double> x);

/// Network output on already-scaled inputs, before output unscaling.
double predict_scaled(const AnnModel& model, std::span<const double> scaled_x);

/// Equivalent model with identity scalers and unit steepness; the scaler
/// affine maps are absorbed into W1/b1 and w2/b2.
AnnModel fold_scalers(const AnnModel& model);

/// Radial network with Gaussian basis ρ(r) = exp(-(r/spread)²):
///
///   y = out⁻¹( bias + Σ_i a_i ρ(‖in(x) − c_i‖) )
///
/// Centers live in scaled input coordinates.
struct RbfModel {
  Eigen::MatrixXd centers;  // neurons x inputs
  Eigen::VectorXd weights;  // neurons
  double bias = 0.0;
  double spread = 1.0;
  std::size_t inputs = 0;
  Scaler input_scaler;
  Scaler output_scaler;
  ModelRole role = ModelRole::pmm;
  std::string response_name;

  std::size_t input_dim() const { return inputs; }
  std::size_t neuron_count() const { return static_cast<std::size_t>(centers.rows()); }
  std::size_t parameter_count() const { return neuron_count() * (inputs + 1) + 1; }
  void validate() const;
};

double predict(const RbfModel& model, std::span<const double> x);

/// Sparse polynomial Σ_k c_k Π_i in(x)_i^{e_ki}. The constant term, when
/// present, is the all-zero exponent vector.
struct PolyModel {
  int degree = 1;
  std::vector<std::vector<int>> terms;
  std::vector<double> coefficients;
  std::size_t inputs = 0;
  Scaler input_scaler;
  ModelRole role = ModelRole::pmm;
  std::string response_name;

  std::size_t input_dim() const { return inputs; }
  std::size_t parameter_count() const { return coefficients.size(); }
  void validate() const;
};

double predict(const PolyModel& model, std::span<const double> x);

using Metamodel = std::variant<AnnModel, RbfModel, PolyModel>;

double predict(const Metamodel& model, std::span<const double> x);
Eigen::VectorXd predict_rows(const Metamodel& model, const Eigen::MatrixXd& inputs);
const std::string& response_name(const Metamodel& model);
ModelRole role(const Metamodel& model);
std::size_t input_dim(const Metamodel& model);
std::size_t parameter_count(const Metamodel& model);
std::string_view family_name(const Metamodel& model);

}  // namespace ivams
