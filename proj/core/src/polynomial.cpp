#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <boost/math/distributions/fisher_f.hpp>

#include "ivams/error.hpp"
#include "ivams/training.hpp"

namespace ivams {

namespace {

void extend(std::vector<int>& current, std::size_t var, int remaining, std::vector<std::vector<int>>& out) {
  if (var + 1 == current.size()) {
    current[var] = remaining;
    out.push_back(current);
    current[var] = 0;
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[var] = e;
    extend(current, var + 1, remaining - e, out);
  }
  current[var] = 0;
}

Eigen::VectorXd monomial_column(const Eigen::MatrixXd& xs, const std::vector<int>& term) {
  Eigen::VectorXd col = Eigen::VectorXd::Ones(xs.rows());
  for (std::size_t i = 0; i < term.size(); ++i) {
    for (int e = 0; e < term[i]; ++e) col.array() *= xs.col(static_cast<Eigen::Index>(i)).array();
  }
  return col;
}

double f_test_p_value(double f, double df2) {
  if (!std::isfinite(f)) return 0.0;
  if (f <= 0.0) return 1.0;
  boost::math::fisher_f_distribution<double> dist(1.0, df2);
  return boost::math::cdf(boost::math::complement(dist, f));
}

}  // namespace

std::vector<std::vector<int>> monomial_basis(std::size_t inputs, int degree) {
  std::vector<std::vector<int>> out;
  if (inputs == 0) return out;
  std::vector<int> current(inputs, 0);
  for (int d = 1; d <= degree; ++d) extend(current, 0, d, out);
  return out;
}

PolyFit fit_polynomial(const SampleSet& data, std::string_view response, int degree, bool stepwise, double p_enter,
                       ScalerKind input_scaling, const SampleSet* verify) {
  if (degree < 1 || degree > 6) throw Error(ErrorCode::invalid_argument, "polynomial degree must be in 1..6");
  if (!(p_enter > 0.0 && p_enter <= 1.0)) throw Error(ErrorCode::invalid_argument, "p_enter must be in (0, 1]");
  const Eigen::VectorXd& y = data.response(response);
  const auto n = static_cast<Eigen::Index>(data.rows());
  if (n < 2) throw Error(ErrorCode::rank_deficient, "polynomial fit needs at least two rows");

  PolyModel model;
  model.degree = degree;
  model.inputs = data.dim();
  model.response_name = std::string(response);
  model.input_scaler = fit_scaler(data.inputs(), input_scaling, data.variable_names());
  const Eigen::MatrixXd xs = model.input_scaler.apply(data.inputs());

  const auto basis = monomial_basis(data.dim(), degree);
  std::vector<std::vector<int>> selected{std::vector<int>(data.dim(), 0)};

  if (!stepwise) {
    const std::size_t cap = std::min(basis.size(), static_cast<std::size_t>(n) - 1);
    selected.insert(selected.end(), basis.begin(), basis.begin() + static_cast<std::ptrdiff_t>(cap));
  } else {
    // Forward selection on orthogonalized candidate columns. Each accepted
    // column is removed from every remaining candidate, so the SSE drop of a
    // candidate is (z·r)² / ‖z‖² with z its residualized column.
    const std::size_t m = basis.size();
    Eigen::MatrixXd cand(n, static_cast<Eigen::Index>(m));
    Eigen::VectorXd raw_norm(static_cast<Eigen::Index>(m));
    for (std::size_t k = 0; k < m; ++k) {
      cand.col(static_cast<Eigen::Index>(k)) = monomial_column(xs, basis[k]);
    }
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
    for (Eigen::Index k = 0; k < cand.cols(); ++k) {
      cand.col(k) -= ones * ones.dot(cand.col(k));
      raw_norm[k] = cand.col(k).squaredNorm();
    }
    Eigen::VectorXd r = y.array() - y.mean();
    double sse = r.squaredNorm();
    const double sst = sse;
    std::vector<bool> alive(m, true);
    for (std::size_t k = 0; k < m; ++k) alive[k] = raw_norm[static_cast<Eigen::Index>(k)] > 0.0;

    while (true) {
      const auto p_next = static_cast<Eigen::Index>(selected.size()) + 1;  // columns after adding one
      const double df2 = static_cast<double>(n - p_next);
      if (df2 < 1.0 || !(sse > 1e-24 * std::max(sst, 1.0))) break;
      std::size_t best = m;
      double best_drop = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        if (!alive[k]) continue;
        const auto col = cand.col(static_cast<Eigen::Index>(k));
        const double zz = col.squaredNorm();
        if (zz < 1e-10 * raw_norm[static_cast<Eigen::Index>(k)]) {
          alive[k] = false;  // collinear with the selected terms
          continue;
        }
        const double zr = col.dot(r);
        const double drop = zr * zr / zz;
        if (drop > best_drop) {
          best_drop = drop;
          best = k;
        }
      }
      if (best == m) break;
      const double sse_new = std::max(sse - best_drop, 0.0);
      const double f = sse_new > 0.0 ? best_drop / (sse_new / df2) : std::numeric_limits<double>::infinity();
      if (!(f_test_p_value(f, df2) < p_enter)) break;

      const Eigen::VectorXd q = cand.col(static_cast<Eigen::Index>(best)).normalized();
      alive[best] = false;
      selected.push_back(basis[best]);
      r -= q * q.dot(r);
      sse = r.squaredNorm();
      for (std::size_t k = 0; k < m; ++k) {
        if (!alive[k]) continue;
        auto col = cand.col(static_cast<Eigen::Index>(k));
        col -= q * q.dot(col);
      }
    }
  }

  Eigen::MatrixXd design(n, static_cast<Eigen::Index>(selected.size()));
  for (std::size_t k = 0; k < selected.size(); ++k) design.col(static_cast<Eigen::Index>(k)) = monomial_column(xs, selected[k]);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
  if (cod.rank() < design.cols()) {
    throw Error(ErrorCode::rank_deficient, "polynomial design matrix has rank " + std::to_string(cod.rank()) + " for " +
                                               std::to_string(design.cols()) + " terms");
  }
  const Eigen::VectorXd coef = cod.solve(y);

  model.terms = std::move(selected);
  model.coefficients.assign(coef.data(), coef.data() + coef.size());
  model.validate();

  PolyFit fit;
  fit.model = model;
  fit.candidate_terms = basis.size() + 1;
  fit.report = assess(fit.model, data, verify ? *verify : data,
                      "poly" + std::to_string(degree) + (stepwise ? "-stepwise" : ""));
  return fit;
}

}  // namespace ivams
