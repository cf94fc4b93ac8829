#include "ivams/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "ivams/error.hpp"

namespace ivams {

std::size_t Oracle::response_index(std::string_view response) const {
  const auto it = std::find(response_names.begin(), response_names.end(), response);
  if (it == response_names.end()) {
    throw Error(ErrorCode::missing_response, "oracle '" + name + "' has no response '" + std::string(response) + "'");
  }
  return static_cast<std::size_t>(it - response_names.begin());
}

std::vector<double> Oracle::operator()(std::span<const double> x) const {
  if (x.size() != input_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "oracle '" + name + "' expects " + std::to_string(input_dim()) +
                                                   " inputs, got " + std::to_string(x.size()));
  }
  if (artificial_delay.count() > 0) std::this_thread::sleep_for(artificial_delay);
  return fn(x);
}

namespace {

constexpr double kPi = std::numbers::pi;

double deg(double rad) { return rad * 180.0 / kPi; }

std::vector<double> opamp(std::span<const double> v) {
  const double w1 = v[0], w2 = v[1], w3 = v[2], w4 = v[3], w5 = v[4], w6 = v[5], w7 = v[6], w8 = v[7];
  const double l1 = v[8], l2 = v[9], l3 = v[10], l4 = v[11], l5 = v[12];
  const double ibias = v[13], cc = v[14], rz = v[15];
  constexpr double kn = 200e-6, kp = 80e-6, cl = 2e-12;
  const auto lambda = [](double l) { return 0.12e-6 / l; };

  const double i_tail = ibias * std::sqrt(w5 / w8) * (1.0 + 0.5 * lambda(l3));
  const double i2 = 2.0 * ibias * std::sqrt(w7 / w8);
  const double gm1 = std::sqrt(2.0 * kn * (std::sqrt(w1 * w2) / l1) * i_tail / 2.0);
  const double gm2 = std::sqrt(2.0 * kp * (w6 / l4) * i2);
  const double av1 = gm1 / ((lambda(l1) + lambda(l2)) * i_tail / 2.0);
  const double av2 = gm2 / ((lambda(l4) + lambda(l5)) * i2);
  const double a = av1 * av2;
  const double a0 = 20.0 * std::log10(a);
  const double gbw = gm1 / (2.0 * kPi * cc);
  const double bw = gbw / a / 1e3;
  const double p2 = gm2 / (2.0 * kPi * cl);
  const double p3 = 5e9 * std::sqrt(w3 / w4) / std::pow(l2 / 0.18e-6, 2);
  const double pm = 90.0 - deg(std::atan(gbw / p2)) - deg(std::atan(gbw / p3)) +
                    0.5 * deg(std::atan(gm1 * (rz - 1.0 / gm2)));
  const double sr1 = i_tail / cc;
  const double sr2 = i2 / (cc + cl);
  const double sr = 1.0 / (1.0 / sr1 + 1.0 / sr2) / 1e6;
  const double pd = 1.2 * (ibias + i_tail + i2) * 1e6;
  const double gm = gm1 * 1e3;
  const double ip = i_tail * 1e6;
  const double in = 1e6 * i2 * (0.5 + 0.5 * std::tanh(w7 / w8 - 1.0));
  return {a0, bw, pm, sr, pd, gm, ip, in};
}

// Alternating-sign ridge through the unit cube, normalized so that its
// standard deviation under uniform inputs is about 0.5.
double ridge(std::span<const double> u, std::size_t shift) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double sign = ((i + shift) % 3 == 0) ? -1.0 : 1.0;
    s += sign * (u[i] - 0.5);
  }
  return s * std::sqrt(3.0 / static_cast<double>(u.size()));
}

std::vector<double> pll(std::span<const double> u) {
  const double s1 = ridge(u, 0);
  const double s2 = ridge(u, 1);
  const double s3 = ridge(u, 2);
  const double freq = 2.7 + 0.35 * std::tanh(1.6 * s1) + 0.04 * std::sin(kPi * u[0]) * u[1];
  const double power = 3.9 * (1.0 + 0.2 * s2 + 0.05 * s2 * s2) * std::exp(0.1 * (u[2] - 0.5));
  const double lock = 3.5 + 2.5 * std::tanh(1.2 * s3) + 0.2 * u[20] * u[19];
  return {freq, power, lock};
}

}  // namespace

Oracle builtin_opamp_oracle() {
  std::vector<DesignVariable> vars;
  for (int k = 1; k <= 8; ++k) vars.push_back({"w" + std::to_string(k), 1e-6, 20e-6});
  for (int k = 1; k <= 5; ++k) vars.push_back({"l" + std::to_string(k), 0.18e-6, 1e-6});
  vars.push_back({"ibias", 5e-6, 40e-6});
  vars.push_back({"cc", 0.5e-12, 3e-12});
  vars.push_back({"rz", 100.0, 5000.0});
  return Oracle{"opamp", DesignSpace(std::move(vars)), {"A0", "BW", "PM", "SR", "PD", "gm", "Ip", "In"}, opamp, {}};
}

Oracle builtin_pll_oracle() {
  std::vector<DesignVariable> vars;
  for (int k = 1; k <= 21; ++k) vars.push_back({"p" + std::to_string(k), 0.0, 1.0});
  return Oracle{"pll", DesignSpace(std::move(vars)), {"frequency", "power", "lock_time"}, pll, {}};
}

Oracle builtin_sin_oracle() {
  return Oracle{"sin",
                DesignSpace({{"u", -1.0, 1.0}}),
                {"y"},
                [](std::span<const double> x) { return std::vector<double>{std::sin(kPi * x[0])}; },
                {}};
}

Oracle builtin_linear_oracle() {
  return Oracle{"linear",
                DesignSpace({{"x1", 0.0, 1.0}, {"x2", 0.0, 1.0}}),
                {"y"},
                [](std::span<const double> x) { return std::vector<double>{1.0 + 2.0 * x[0] - 3.0 * x[1]}; },
                {}};
}

std::vector<std::string> builtin_oracle_names() { return {"opamp", "pll", "sin", "linear"}; }

Oracle builtin_oracle(std::string_view name) {
  if (name == "opamp") return builtin_opamp_oracle();
  if (name == "pll") return builtin_pll_oracle();
  if (name == "sin") return builtin_sin_oracle();
  if (name == "linear") return builtin_linear_oracle();
  throw Error(ErrorCode::invalid_argument, "unknown oracle '" + std::string(name) + "' (opamp, pll, sin, linear)");
}

SampleSet evaluate(const Oracle& oracle, const SampleMatrix& inputs, std::size_t workers) {
  if (inputs.rows() > 0 && static_cast<std::size_t>(inputs.cols()) != oracle.input_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "oracle '" + oracle.name + "' expects " +
                                                   std::to_string(oracle.input_dim()) + " columns, got " +
                                                   std::to_string(inputs.cols()));
  }
  const auto n = static_cast<std::size_t>(inputs.rows());
  const std::size_t r = oracle.response_names.size();
  const SampleMatrix x = inputs.rows() > 0 ? inputs : SampleMatrix(0, static_cast<Eigen::Index>(oracle.input_dim()));
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(r));

  auto run_row = [&](std::size_t row) {
    std::vector<double> p(oracle.input_dim());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = x(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(i));
    const auto y = oracle(p);
    if (y.size() != r) throw Error(ErrorCode::count_mismatch, "oracle '" + oracle.name + "' returned wrong arity");
    for (std::size_t k = 0; k < r; ++k) out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(k)) = y[k];
  };

  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t row = 0; row < n; ++row) run_row(row);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t row; (row = next.fetch_add(1)) < n;) {
          try {
            run_row(row);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  SampleSet set(oracle.space.names(), x);
  for (std::size_t k = 0; k < r; ++k) set.add_response(oracle.response_names[k], out.col(static_cast<Eigen::Index>(k)));
  return set;
}

CachedOracle::CachedOracle(Oracle oracle) : oracle_(std::move(oracle)) {}

double CachedOracle::response(std::size_t index, std::span<const double> x) {
  std::lock_guard lock(mutex_);
  if (last_y_.empty() || !std::equal(x.begin(), x.end(), last_x_.begin(), last_x_.end())) {
    last_y_ = oracle_(x);
    last_x_.assign(x.begin(), x.end());
    ++calls_;
  }
  return last_y_.at(index);
}

ResponseFn CachedOracle::bind(std::string_view response) {
  const std::size_t index = oracle_.response_index(response);
  return [this, index](std::span<const double> x) { return this->response(index, x); };
}

}  // namespace ivams
