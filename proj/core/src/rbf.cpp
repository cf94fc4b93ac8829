#include <cmath>

#include <Eigen/Dense>

#include "ivams/error.hpp"
#include "ivams/training.hpp"

namespace ivams {

namespace {

// Columns: bias, then one Gaussian per center.
Eigen::MatrixXd rbf_design(const Eigen::MatrixXd& xs, const std::vector<Eigen::Index>& centers, double spread) {
  const double inv2 = 1.0 / (spread * spread);
  Eigen::MatrixXd phi(xs.rows(), static_cast<Eigen::Index>(centers.size()) + 1);
  phi.col(0).setOnes();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const auto row = xs.row(centers[c]);
    for (Eigen::Index k = 0; k < xs.rows(); ++k) {
      phi(k, static_cast<Eigen::Index>(c) + 1) = std::exp(-(xs.row(k) - row).squaredNorm() * inv2);
    }
  }
  return phi;
}

}  // namespace

RbfFit train_rbf(const SampleSet& data, std::string_view response, double error_goal, double spread,
                 std::size_t max_neurons, ScalerKind input_scaling, const SampleSet* verify) {
  if (data.rows() == 0) throw Error(ErrorCode::invalid_argument, "RBF training needs at least one row");
  if (!(spread > 0.0) || !std::isfinite(spread)) throw Error(ErrorCode::invalid_argument, "RBF spread must be > 0");
  const Eigen::VectorXd& y = data.response(response);
  const auto n = static_cast<Eigen::Index>(data.rows());

  RbfModel model;
  model.inputs = data.dim();
  model.spread = spread;
  model.response_name = std::string(response);
  // A single row cannot define a scaler; fall back to identity there.
  model.input_scaler = data.rows() > 1 ? fit_scaler(data.inputs(), input_scaling, data.variable_names())
                                       : Scaler::identity(data.dim());
  model.output_scaler = Scaler::identity(1);
  const Eigen::MatrixXd xs = model.input_scaler.apply(data.inputs());

  RbfFit fit;
  std::vector<Eigen::Index> centers;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  Eigen::VectorXd theta;
  while (true) {
    const Eigen::MatrixXd phi = rbf_design(xs, centers, spread);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(phi);
    if (cod.rank() < std::min(phi.rows(), phi.cols())) {
      throw Error(ErrorCode::rank_deficient, "RBF output layer is rank deficient with " +
                                                 std::to_string(centers.size()) + " neurons; reduce spread");
    }
    theta = cod.solve(y);
    const Eigen::VectorXd residual = y - phi * theta;
    const double sse = residual.squaredNorm();
    fit.sse_history.push_back(sse);
    if (sse / static_cast<double>(n) < error_goal || centers.size() >= max_neurons) break;

    Eigen::Index worst = -1;
    double worst_err = -1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (used[static_cast<std::size_t>(k)]) continue;
      bool duplicate = false;
      for (auto c : centers) {
        if ((xs.row(c).array() == xs.row(k).array()).all()) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) {
        used[static_cast<std::size_t>(k)] = true;
        continue;
      }
      const double err = std::abs(residual[k]);
      if (err > worst_err) {
        worst_err = err;
        worst = k;
      }
    }
    if (worst < 0) break;
    used[static_cast<std::size_t>(worst)] = true;
    centers.push_back(worst);
  }

  model.centers.resize(static_cast<Eigen::Index>(centers.size()), static_cast<Eigen::Index>(data.dim()));
  for (std::size_t c = 0; c < centers.size(); ++c) model.centers.row(static_cast<Eigen::Index>(c)) = xs.row(centers[c]);
  model.bias = theta[0];
  model.weights = theta.tail(static_cast<Eigen::Index>(centers.size()));
  model.validate();
  fit.model = model;
  fit.report = assess(fit.model, data, verify ? *verify : data, "radial->purelin");
  return fit;
}

}  // namespace ivams
