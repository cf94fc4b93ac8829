#include "ivams/training.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "ivams/error.hpp"
#include "ivams/rng.hpp"

namespace ivams {

void TrainOptions::validate() const {
  if (hidden_size == 0) throw Error(ErrorCode::invalid_argument, "hidden_size must be >= 1");
  if (!(steepness > 0.0)) throw Error(ErrorCode::invalid_argument, "steepness must be > 0");
  if (!(learning_rate > 0.0)) throw Error(ErrorCode::invalid_argument, "learning_rate must be > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw Error(ErrorCode::invalid_argument, "momentum must be in [0, 1)");
  if (!(l2_penalty >= 0.0)) throw Error(ErrorCode::invalid_argument, "l2_penalty must be >= 0");
  if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "holdout_fraction must be in (0, 1)");
  }
}

Eigen::VectorXd pack_parameters(const AnnModel& model) {
  const auto m = model.w1.rows();
  const auto n = model.w1.cols();
  Eigen::VectorXd p(m * n + 2 * m + 1);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) p[k++] = model.w1(j, i);
  }
  for (Eigen::Index j = 0; j < m; ++j) p[k++] = model.b1[j];
  for (Eigen::Index j = 0; j < m; ++j) p[k++] = model.w2[j];
  p[k] = model.b2;
  return p;
}

void unpack_parameters(AnnModel& model, const Eigen::VectorXd& p) {
  const auto m = model.w1.rows();
  const auto n = model.w1.cols();
  if (p.size() != m * n + 2 * m + 1) throw Error(ErrorCode::dimension_mismatch, "parameter vector length mismatch");
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) model.w1(j, i) = p[k++];
  }
  for (Eigen::Index j = 0; j < m; ++j) model.b1[j] = p[k++];
  for (Eigen::Index j = 0; j < m; ++j) model.w2[j] = p[k++];
  model.b2 = p[k];
}

LossGradient ann_loss_gradient(const AnnModel& model, const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                               double l2) {
  const auto m = model.w1.rows();
  const auto n = model.w1.cols();
  const auto rows = x.rows();
  const double lambda = model.steepness;
  const double inv_rows = 1.0 / static_cast<double>(rows);

  Eigen::MatrixXd g_w1 = Eigen::MatrixXd::Zero(m, n);
  Eigen::VectorXd g_b1 = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd g_w2 = Eigen::VectorXd::Zero(m);
  double g_b2 = 0.0;
  double sse = 0.0;
  Eigen::VectorXd h(m);

  for (Eigen::Index k = 0; k < rows; ++k) {
    double yhat = model.b2;
    for (Eigen::Index j = 0; j < m; ++j) {
      double a = model.b1[j];
      for (Eigen::Index i = 0; i < n; ++i) a += model.w1(j, i) * x(k, i);
      h[j] = activate(model.activation, lambda * a);
      yhat += model.w2[j] * h[j];
    }
    const double e = yhat - y[k];
    sse += e * e;
    const double d_out = 2.0 * e * inv_rows;
    g_b2 += d_out;
    for (Eigen::Index j = 0; j < m; ++j) {
      g_w2[j] += d_out * h[j];
      const double slope = model.activation == Activation::tanh ? 1.0 - h[j] * h[j] : h[j] * (1.0 - h[j]);
      const double delta = d_out * model.w2[j] * lambda * slope;
      g_b1[j] += delta;
      for (Eigen::Index i = 0; i < n; ++i) g_w1(j, i) += delta * x(k, i);
    }
  }

  LossGradient out;
  out.loss = sse * inv_rows + l2 * (model.w1.squaredNorm() + model.w2.squaredNorm());
  g_w1 += 2.0 * l2 * model.w1;
  g_w2 += 2.0 * l2 * model.w2;

  out.gradient.resize(m * n + 2 * m + 1);
  Eigen::Index idx = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) out.gradient[idx++] = g_w1(j, i);
  }
  for (Eigen::Index j = 0; j < m; ++j) out.gradient[idx++] = g_b1[j];
  for (Eigen::Index j = 0; j < m; ++j) out.gradient[idx++] = g_w2[j];
  out.gradient[idx] = g_b2;
  return out;
}

namespace {

double scaled_mse(const AnnModel& model, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  double sse = 0.0;
  std::vector<double> row(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index k = 0; k < x.rows(); ++k) {
    for (Eigen::Index i = 0; i < x.cols(); ++i) row[static_cast<std::size_t>(i)] = x(k, i);
    const double e = predict_scaled(model, row) - y[k];
    sse += e * e;
  }
  return sse / static_cast<double>(x.rows());
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m, std::span<const std::size_t> rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = m.row(static_cast<Eigen::Index>(rows[r]));
  return out;
}

Eigen::VectorXd take(const Eigen::VectorXd& v, std::span<const std::size_t> rows) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) out[static_cast<Eigen::Index>(r)] = v[static_cast<Eigen::Index>(rows[r])];
  return out;
}

std::span<const double> as_span(const Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

}  // namespace

AnnFit train_ann(const SampleSet& data, std::string_view response, const TrainOptions& opts) {
  opts.validate();
  const Eigen::VectorXd& y = data.response(response);
  const std::size_t n = data.rows();
  if (n < 10) throw Error(ErrorCode::invalid_argument, "ANN training needs at least 10 rows, got " + std::to_string(n));

  // Holdout rows for early stopping, drawn from a seeded permutation.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng split_rng(Rng::derive(opts.seed, 1));
  shuffle(order.begin(), order.end(), split_rng);
  const auto n_hold = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(opts.holdout_fraction * static_cast<double>(n))), 1, n - 1);
  std::vector<std::size_t> hold_rows(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_hold));
  std::vector<std::size_t> fit_rows(order.begin() + static_cast<std::ptrdiff_t>(n_hold), order.end());
  std::sort(hold_rows.begin(), hold_rows.end());
  std::sort(fit_rows.begin(), fit_rows.end());

  AnnModel model = AnnModel::zeros(data.dim(), opts.hidden_size, opts.activation);
  model.steepness = opts.steepness;
  model.role = opts.role;
  model.response_name = std::string(response);
  model.input_scaler = fit_scaler(data.inputs(), opts.input_scaling, data.variable_names());
  model.output_scaler = fit_response_scaler(y);

  const Eigen::MatrixXd xs = model.input_scaler.apply(data.inputs());
  Eigen::VectorXd ys(static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < ys.size(); ++k) ys[k] = model.output_scaler.apply(0, y[k]);

  const Eigen::MatrixXd x_fit = take_rows(xs, fit_rows);
  const Eigen::VectorXd y_fit = take(ys, fit_rows);
  const Eigen::MatrixXd x_hold = take_rows(xs, hold_rows);
  const Eigen::VectorXd y_hold = take(ys, hold_rows);

  Rng init_rng(Rng::derive(opts.seed, 2));
  Eigen::VectorXd theta = pack_parameters(model);
  for (Eigen::Index k = 0; k < theta.size(); ++k) theta[k] = init_rng.uniform(-0.5, 0.5);
  unpack_parameters(model, theta);

  AnnFit fit;
  double best = scaled_mse(model, x_hold, y_hold);
  fit.holdout_history.push_back(best);
  Eigen::VectorXd best_theta = theta;
  Eigen::VectorXd velocity = Eigen::VectorXd::Zero(theta.size());
  std::size_t stale = 0;
  std::size_t epoch = 0;

  while (epoch < opts.max_epochs) {
    const LossGradient lg = ann_loss_gradient(model, x_fit, y_fit, opts.l2_penalty);
    if (!std::isfinite(lg.loss) || !lg.gradient.allFinite()) {
      throw Error(ErrorCode::training_diverged, "ANN loss became non-finite at epoch " + std::to_string(epoch));
    }
    velocity = opts.momentum * velocity - opts.learning_rate * lg.gradient;
    theta += velocity;
    unpack_parameters(model, theta);
    ++epoch;

    const double h = scaled_mse(model, x_hold, y_hold);
    if (!std::isfinite(h)) {
      throw Error(ErrorCode::training_diverged, "ANN holdout error became non-finite at epoch " + std::to_string(epoch));
    }
    fit.holdout_history.push_back(h);
    if (h < best) {
      best = h;
      best_theta = theta;
      fit.best_epoch = epoch;
      stale = 0;
    } else if (opts.early_stop_patience > 0 && ++stale >= opts.early_stop_patience) {
      break;
    }
  }

  fit.epochs_run = epoch;
  fit.final_model = model;
  unpack_parameters(model, best_theta);
  fit.model = model;

  const SampleSet fit_set = data.select(fit_rows);
  const SampleSet hold_set = data.select(hold_rows);
  fit.report = assess(fit.model, fit_set, hold_set, std::string(to_string(opts.activation)) + "->purelin");
  fit.report.scaling = std::string(to_string(opts.input_scaling));
  fit.report.hidden = opts.hidden_size;
  return fit;
}

std::vector<AnnFit> train_ann_sweep(const SampleSet& data, std::string_view response, const TrainOptions& opts,
                                    std::span<const std::size_t> hidden_sizes, std::size_t workers) {
  std::vector<AnnFit> out(hidden_sizes.size());
  auto run_one = [&](std::size_t k) {
    TrainOptions o = opts;
    o.hidden_size = hidden_sizes[k];
    out[k] = train_ann(data, response, o);
  };
  if (workers <= 1) {
    for (std::size_t k = 0; k < hidden_sizes.size(); ++k) run_one(k);
    return out;
  }
  for (std::size_t start = 0; start < hidden_sizes.size(); start += workers) {
    std::vector<std::future<void>> batch;
    for (std::size_t k = start; k < std::min(start + workers, hidden_sizes.size()); ++k) {
      batch.push_back(std::async(std::launch::async, run_one, k));
    }
    for (auto& f : batch) f.get();
  }
  return out;
}

FitReport assess(const Metamodel& model, const SampleSet& train, const SampleSet& verify, std::string descriptor,
                 double overfit_threshold) {
  const auto& name = response_name(model);
  const Eigen::VectorXd& y_train = train.response(name);
  const Eigen::VectorXd& y_verify = verify.response(name);
  const Eigen::VectorXd p_train = predict_rows(model, train.inputs());
  const Eigen::VectorXd p_verify = predict_rows(model, verify.inputs());
  FitReport r = make_fit_report(std::move(descriptor), name, parameter_count(model), as_span(y_train), as_span(p_train),
                                as_span(y_verify), as_span(p_verify), overfit_threshold);
  if (const auto* a = std::get_if<AnnModel>(&model)) {
    r.hidden = a->hidden_size();
    r.scaling = std::string(to_string(a->input_scaler.kind()));
  } else if (const auto* b = std::get_if<RbfModel>(&model)) {
    r.hidden = b->neuron_count();
    r.scaling = std::string(to_string(b->input_scaler.kind()));
  } else {
    r.scaling = std::string(to_string(std::get<PolyModel>(model).input_scaler.kind()));
  }
  return r;
}

}  // namespace ivams
