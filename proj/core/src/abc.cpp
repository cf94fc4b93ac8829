#include "ivams/abc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ivams/error.hpp"
#include "ivams/rng.hpp"
#include "ivams/sample_set.hpp"

namespace ivams {

double WindowConstraint::violation(double value) const {
  if (!std::isfinite(value)) return std::numeric_limits<double>::infinity();
  const double rel = center != 0.0 ? std::abs(value - center) / std::abs(center) : std::abs(value);
  return std::max(0.0, rel - relative_tolerance);
}

void AbcParams::validate() const {
  if (colony_size < 4 || colony_size % 2 != 0) throw Error(ErrorCode::invalid_argument, "ABC colony_size must be even and >= 4");
  if (limit < 1) throw Error(ErrorCode::invalid_argument, "ABC limit must be >= 1");
  if (max_cycles < 1) throw Error(ErrorCode::invalid_argument, "ABC max_cycles must be >= 1");
}

namespace {

struct Source {
  Eigen::VectorXd x;
  double fom = 0.0;
  double objective = 0.0;
  bool feasible = false;
  std::vector<double> windows;
  std::size_t trials = 0;
};

double fitness(double f) { return f >= 0.0 ? 1.0 / (1.0 + f) : 1.0 + std::abs(f); }

}  // namespace

AbcResult abc_optimize(const DesignSpace& space, const FomProblem& problem, const AbcParams& params) {
  params.validate();
  for (const auto& w : problem.windows) {
    if (!(w.relative_tolerance > 0.0)) throw Error(ErrorCode::invalid_argument, "window tolerance must be > 0");
  }
  const std::size_t sn = params.colony_size / 2;
  const std::size_t d = space.dim();
  Rng rng(params.seed);
  AbcResult result;

  auto evaluate = [&](Source& s) {
    const std::span<const double> x(s.x.data(), d);
    double obj = 0.0;
    for (const auto& term : problem.objective) obj += term.weight * term.model(x) / term.scale;
    double viol = 0.0;
    s.windows.resize(problem.windows.size());
    for (std::size_t c = 0; c < problem.windows.size(); ++c) {
      s.windows[c] = problem.windows[c].model(x);
      viol += problem.windows[c].violation(s.windows[c]);
    }
    s.objective = obj;
    s.feasible = viol == 0.0;
    s.fom = obj + problem.penalty_weight * viol;
    if (!std::isfinite(s.fom)) s.fom = std::numeric_limits<double>::max();
    ++result.evaluations;
  };

  auto random_source = [&]() {
    Source s;
    s.x.resize(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) s.x[static_cast<Eigen::Index>(i)] = space.from_unit(i, rng.uniform());
    evaluate(s);
    ++result.scouts;
    return s;
  };

  bool have_feasible = false;
  Source best_feasible;
  Source best_any;
  double best_seen = std::numeric_limits<double>::infinity();
  auto record = [&](const Source& s) {
    if (s.fom < best_seen || best_any.x.size() == 0) {
      best_any = s;
      best_seen = std::min(best_seen, s.fom);
    }
    if (s.feasible && (!have_feasible || s.objective < best_feasible.objective)) {
      best_feasible = s;
      have_feasible = true;
    }
  };

  std::vector<Source> sources;
  sources.reserve(sn);
  for (std::size_t i = 0; i < sn; ++i) {
    sources.push_back(random_source());
    record(sources.back());
  }

  auto try_neighbor = [&](std::size_t i) {
    std::size_t k = rng.index(sn - 1);
    if (k >= i) ++k;
    const std::size_t j = rng.index(d);
    const auto ji = static_cast<Eigen::Index>(j);
    Source cand;
    cand.x = sources[i].x;
    const double phi = rng.uniform(-1.0, 1.0);
    cand.x[ji] = std::clamp(sources[i].x[ji] + phi * (sources[i].x[ji] - sources[k].x[ji]), space[j].lower, space[j].upper);
    evaluate(cand);
    record(cand);
    if (cand.fom < sources[i].fom) {
      cand.trials = 0;
      sources[i] = std::move(cand);
    } else {
      ++sources[i].trials;
    }
  };

  for (std::size_t cycle = 0; cycle < params.max_cycles; ++cycle) {
    for (std::size_t i = 0; i < sn; ++i) try_neighbor(i);

    std::vector<double> fit(sn);
    double total = 0.0;
    for (std::size_t i = 0; i < sn; ++i) total += (fit[i] = fitness(sources[i].fom));
    for (std::size_t b = 0; b < sn; ++b) {
      const double r = rng.uniform() * total;
      double acc = 0.0;
      std::size_t pick = sn - 1;
      for (std::size_t i = 0; i < sn; ++i) {
        acc += fit[i];
        if (r < acc) {
          pick = i;
          break;
        }
      }
      try_neighbor(pick);
    }

    for (auto& s : sources) {
      if (s.trials > params.limit) {
        s = random_source();
        record(s);
      }
    }
    result.trace.push_back(best_seen);
  }

  const Source& best = have_feasible ? best_feasible : best_any;
  result.best_design = best.x;
  result.best_fom = best.fom;
  result.best_objective = best.objective;
  result.feasible = best.feasible;
  result.window_values = best.windows;
  return result;
}

bool trace_is_monotone(std::span<const double> trace) {
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i] > trace[i - 1]) return false;
  }
  return true;
}

std::string trace_to_csv(std::span<const double> trace) {
  std::string out = "cycle,best_fom\n";
  for (std::size_t i = 0; i < trace.size(); ++i) out += std::to_string(i + 1) + "," + format_double(trace[i]) + "\n";
  return out;
}

}  // namespace ivams
