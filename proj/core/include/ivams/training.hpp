#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ivams/metamodel.hpp"
#include "ivams/metrics.hpp"
#include "ivams/sample_set.hpp"
#include "ivams/scaling.hpp"

namespace ivams {

struct TrainOptions {
  std::size_t hidden_size = 4;
  Activation activation = Activation::tanh;
  double steepness = 1.0;
  std::size_t max_epochs = 5000;
  double learning_rate = 0.01;
  double momentum = 0.9;
  double l2_penalty = 1e-5;
  /// Epochs without holdout improvement before stopping; 0 disables early stopping.
  std::size_t early_stop_patience = 500;
  double holdout_fraction = 0.2;
  ScalerKind input_scaling = ScalerKind::meanstd;
  ModelRole role = ModelRole::pmm;
  std::uint64_t seed = 1;

  /// Throws Error(invalid_argument) on out-of-range settings.
  void validate() const;
};

struct AnnFit {
  AnnModel model;             // weights from the best-holdout epoch
  AnnModel final_model;       // weights after the last epoch run
  FitReport report;           // training split vs holdout split
  std::size_t epochs_run = 0;
  std::size_t best_epoch = 0;
  std::vector<double> holdout_history;  // holdout MSE (scaled units), index = epoch
};

/// Full-batch gradient descent with momentum on the scaled problem
///
///   L = (1/n) Σ (y_k − ŷ_k)² + l2 · (‖W1‖² + ‖w2‖²)
///
/// Weights start uniform in [-0.5, 0.5]. A holdout split carved from `data`
/// drives early stopping; the returned model carries the best-holdout weights.
AnnFit train_ann(const SampleSet& data, std::string_view response, const TrainOptions& opts);

/// One fit per hidden size, in the order given. Runs up to `workers` fits
/// concurrently; results do not depend on the worker count.
std::vector<AnnFit> train_ann_sweep(const SampleSet& data, std::string_view response, const TrainOptions& opts,
                                    std::span<const std::size_t> hidden_sizes, std::size_t workers = 1);

/// Flattened parameters: W1 row-major, then b1, w2, b2.
Eigen::VectorXd pack_parameters(const AnnModel& model);
void unpack_parameters(AnnModel& model, const Eigen::VectorXd& params);

struct LossGradient {
  double loss = 0.0;
  Eigen::VectorXd gradient;  // same layout as pack_parameters
};

/// Training loss and its analytic gradient (backpropagation) on scaled
/// inputs/targets. Scalers on `model` are ignored.
LossGradient ann_loss_gradient(const AnnModel& model, const Eigen::MatrixXd& scaled_inputs,
                               const Eigen::VectorXd& scaled_targets, double l2_penalty);

struct RbfFit {
  RbfModel model;
  FitReport report;
  std::vector<double> sse_history;  // training SSE after each solve, index = neuron count
};

/// Greedy radial network: starting from zero neurons, repeatedly solve the
/// linear output layer by least squares and add a neuron centered at the
/// worst-predicted training input, until training MSE < error_goal or
/// max_neurons is reached. `verify`, when given, fills the report's
/// verification columns; otherwise they repeat the training statistics.
RbfFit train_rbf(const SampleSet& data, std::string_view response, double error_goal, double spread,
                 std::size_t max_neurons, ScalerKind input_scaling = ScalerKind::none,
                 const SampleSet* verify = nullptr);

struct PolyFit {
  PolyModel model;
  FitReport report;
  std::size_t candidate_terms = 0;
};

/// Least squares over monomials of total degree <= degree (1..6). With
/// `stepwise`, forward selection adds the term with the largest partial
/// F statistic while its p-value is below p_enter; otherwise the full basis
/// is used, truncated in graded order to the number of rows.
PolyFit fit_polynomial(const SampleSet& data, std::string_view response, int degree, bool stepwise,
                       double p_enter = 0.05, ScalerKind input_scaling = ScalerKind::none,
                       const SampleSet* verify = nullptr);

/// Exponent vectors of total degree 1..degree over `inputs` variables, in
/// graded lexicographic order.
std::vector<std::vector<int>> monomial_basis(std::size_t inputs, int degree);

/// Report for any metamodel against a training and a verification set.
FitReport assess(const Metamodel& model, const SampleSet& train, const SampleSet& verify, std::string descriptor,
                 double overfit_threshold = kDefaultOverfitThreshold);

}  // namespace ivams
