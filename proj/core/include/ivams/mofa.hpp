#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ivams/design_space.hpp"
#include "ivams/rng.hpp"

namespace ivams {

/// Scalar response of a design point, typically a metamodel prediction.
using ResponseFn = std::function<double(std::span<const double>)>;

enum class Direction { maximize, minimize };
enum class Sense { greater, less };

Direction parse_direction(std::string_view text);
Sense parse_sense(std::string_view text);

struct ObjectiveSpec {
  std::string name;
  Direction direction = Direction::minimize;
  ResponseFn model;
};

/// Strict inequality: value > bound (greater) or value < bound (less).
struct ConstraintSpec {
  std::string name;
  ResponseFn model;
  double bound = 0.0;
  Sense sense = Sense::greater;

  bool satisfied(double value) const;
  /// Distance to the bound on the wrong side, 0 when satisfied or on it.
  double violation(double value) const;
};

struct MofaParams {
  std::size_t population = 20;  // K
  std::size_t t_max = 500;
  double beta0 = 1.0;           // attractiveness at zero distance
  double gamma = 1.0;           // light absorption, unit-cube distances
  double alpha = 0.25;          // randomization step, unit-cube fraction
  double alpha_decay = 0.97;    // alpha multiplier per iteration
  std::size_t max_regen = 10;   // extra move attempts when constraints fail
  std::uint64_t seed = 1;
  /// Re-check archive non-domination after every iteration (test builds).
  bool verify_archive = false;

  void validate() const;
};

/// a dominates b: no worse in every objective and strictly better in one.
bool dominates(std::span<const double> a, std::span<const double> b, std::span<const Direction> directions);

/// Indices (ascending) of points dominated by no other point. Identical
/// vectors do not dominate each other.
std::vector<std::size_t> non_dominated(const std::vector<std::vector<double>>& points,
                                       std::span<const Direction> directions);

/// Weighted sum over the population, larger is better:
///   ψ_k = Σ_i weights_i · s_i · (f_ki − mean_i) / stddev_i
/// with s_i = +1 for maximized and −1 for minimized objectives. Objectives
/// with zero population stddev enter unnormalized.
std::vector<double> scalarize(const std::vector<std::vector<double>>& population_objectives,
                              std::span<const Direction> directions, std::span<const double> weights);

/// Two-objective form ψ = (1 − w)·obj₁ − w·obj₂ (for a maximize/minimize pair).
std::vector<double> scalarize(const std::vector<std::vector<double>>& population_objectives,
                              std::span<const Direction> directions, double w);

struct FireflyStep {
  double beta0 = 1.0;
  double gamma = 1.0;
  double alpha = 0.0;
};

/// Displacement β₀·exp(−γr²)·(target − current) + α·(u − ½) per coordinate,
/// computed in unit-cube coordinates and mapped back to design units, then
/// shortened so that current + Δx stays inside the space.
Eigen::VectorXd move_vector(const DesignSpace& space, std::span<const double> current, std::span<const double> target,
                            const FireflyStep& step, Rng& rng);

/// current + displacement, clamped onto the bounds.
Eigen::VectorXd apply_move(const DesignSpace& space, std::span<const double> current,
                           std::span<const double> displacement);

struct ArchiveEntry {
  Eigen::VectorXd design;
  std::vector<double> objectives;
  std::vector<double> constraints;
};

/// Mutually non-dominated set of feasible designs.
class ParetoArchive {
 public:
  ParetoArchive() = default;
  explicit ParetoArchive(std::vector<Direction> directions) : directions_(std::move(directions)) {}

  /// Adds the entry unless an existing entry is at least as good in every
  /// objective; drops entries the new one dominates. Returns true if added.
  bool insert(ArchiveEntry entry);

  const std::vector<ArchiveEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Direction>& directions() const { return directions_; }

  /// Brute-force pairwise check.
  bool mutually_non_dominated() const;

 private:
  std::vector<Direction> directions_;
  std::vector<ArchiveEntry> entries_;
};

struct MofaResult {
  ParetoArchive archive;
  std::size_t iterations = 0;
  std::size_t objective_evaluations = 0;   // design points at which objectives were evaluated
  std::size_t constraint_evaluations = 0;  // design points at which constraints were evaluated
  std::size_t rejected_moves = 0;          // fireflies kept in place after max_regen failures
};

/// Multi-objective firefly search. Each iteration finds the non-dominated
/// feasible members of the population. A feasible firefly moves toward a
/// randomly chosen one of them that dominates it, or, when none does, toward
/// the best feasible design under a freshly weighted scalarization. An
/// infeasible firefly moves toward a random non-dominated feasible design, or
/// toward a less-violating one while nothing is feasible. A destination is
/// accepted if it is feasible, or, for an infeasible firefly, if it lowers
/// the total relative violation; otherwise the move is regenerated up to
/// max_regen times, after which the firefly stays put. The archive collects
/// the non-dominated subset of every feasible design visited, the initial
/// population included.
///
/// Throws InfeasibleError when no feasible design was found.
MofaResult mofa_optimize(const DesignSpace& space, const std::vector<ObjectiveSpec>& objectives,
                         const std::vector<ConstraintSpec>& constraints, const MofaParams& params);

/// Header: design variables, objective names, constraint names.
std::string archive_to_csv(const ParetoArchive& archive, std::span<const std::string> variable_names,
                           std::span<const std::string> objective_names, std::span<const std::string> constraint_names);

}  // namespace ivams
