#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ivams/design_space.hpp"
#include "ivams/mofa.hpp"

namespace ivams {

/// weight · model(x) / scale, summed into the figure of merit.
struct ObjectiveTerm {
  std::string name;
  ResponseFn model;
  double weight = 1.0;
  double scale = 1.0;
};

/// |model(x) − center| ≤ relative_tolerance · |center|.
struct WindowConstraint {
  std::string name;
  ResponseFn model;
  double center = 0.0;
  double relative_tolerance = 0.005;

  /// Relative excess beyond the tolerance; 0 inside the window.
  double violation(double value) const;
};

/// Minimize Σ terms subject to window constraints, handled by a penalty
/// of penalty_weight per unit of relative window violation.
struct FomProblem {
  std::vector<ObjectiveTerm> objective;
  std::vector<WindowConstraint> windows;
  double penalty_weight = 1e3;
};

struct AbcParams {
  std::size_t colony_size = 20;  // employed = onlooker = colony_size / 2
  std::size_t limit = 50;
  std::size_t max_cycles = 500;
  std::uint64_t seed = 1;

  void validate() const;
};

struct AbcResult {
  Eigen::VectorXd best_design;
  double best_fom = 0.0;        // penalized figure of merit of best_design
  double best_objective = 0.0;  // unpenalized objective of best_design
  bool feasible = false;
  std::vector<double> window_values;  // window responses at best_design
  std::vector<double> trace;          // best penalized FoM seen, one per cycle
  std::size_t evaluations = 0;
  std::size_t scouts = 0;             // random placements, initial ones included
};

/// Artificial bee colony minimization. Each cycle runs an employed phase
/// (one-coordinate perturbation v_j = x_j + φ(x_j − x_kj), φ ∈ [−1, 1],
/// greedy acceptance), an onlooker phase (sources drawn with probability
/// proportional to fitness) and a scout phase (sources unimproved for more
/// than `limit` trials are replaced by random points). Returns the best
/// feasible design seen, or the best penalized one if none was feasible.
AbcResult abc_optimize(const DesignSpace& space, const FomProblem& problem, const AbcParams& params);

/// True iff each entry is <= its predecessor. Empty traces are monotone.
bool trace_is_monotone(std::span<const double> trace);

/// "cycle,best_fom" rows, cycles numbered from 1.
std::string trace_to_csv(std::span<const double> trace);

}  // namespace ivams
