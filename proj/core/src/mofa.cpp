#include "ivams/mofa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ivams/error.hpp"
#include "ivams/sample_set.hpp"

namespace ivams {

Direction parse_direction(std::string_view text) {
  if (text == "maximize" || text == "max") return Direction::maximize;
  if (text == "minimize" || text == "min") return Direction::minimize;
  throw Error(ErrorCode::invalid_argument, "unknown direction '" + std::string(text) + "'");
}

Sense parse_sense(std::string_view text) {
  if (text == "greater" || text == ">") return Sense::greater;
  if (text == "less" || text == "<") return Sense::less;
  throw Error(ErrorCode::invalid_argument, "unknown constraint sense '" + std::string(text) + "'");
}

bool ConstraintSpec::satisfied(double value) const {
  return sense == Sense::greater ? value > bound : value < bound;
}

double ConstraintSpec::violation(double value) const {
  if (!std::isfinite(value)) return std::numeric_limits<double>::infinity();
  return sense == Sense::greater ? std::max(0.0, bound - value) : std::max(0.0, value - bound);
}

void MofaParams::validate() const {
  if (population < 2) throw Error(ErrorCode::invalid_argument, "MOFA population K must be >= 2");
  if (t_max < 1) throw Error(ErrorCode::invalid_argument, "MOFA t_max must be >= 1");
  if (max_regen < 1) throw Error(ErrorCode::invalid_argument, "MOFA max_regen must be >= 1");
  if (!(beta0 >= 0.0) || !(gamma >= 0.0) || !(alpha >= 0.0) || !(alpha_decay > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "MOFA firefly parameters must be non-negative");
  }
}

bool dominates(std::span<const double> a, std::span<const double> b, std::span<const Direction> directions) {
  bool strictly = false;
  for (std::size_t i = 0; i < directions.size(); ++i) {
    const double da = directions[i] == Direction::maximize ? -a[i] : a[i];
    const double db = directions[i] == Direction::maximize ? -b[i] : b[i];
    if (da > db) return false;
    if (da < db) strictly = true;
  }
  return strictly;
}

std::vector<std::size_t> non_dominated(const std::vector<std::vector<double>>& points,
                                       std::span<const Direction> directions) {
  const std::size_t k = directions.size();
  for (const auto& p : points) {
    if (p.size() != k) throw Error(ErrorCode::dimension_mismatch, "objective vector length differs from direction count");
  }
  // Every dominator of p precedes p lexicographically (in minimization
  // form), and domination is transitive, so comparing against the
  // non-dominated points seen so far is enough.
  auto key = [&](std::size_t idx, std::size_t obj) {
    return directions[obj] == Direction::maximize ? -points[idx][obj] : points[idx][obj];
  };
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    for (std::size_t o = 0; o < k; ++o) {
      const double ka = key(a, o), kb = key(b, o);
      if (ka != kb) return ka < kb;
    }
    return false;
  });
  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    bool dominated = false;
    for (std::size_t q : kept) {
      if (dominates(points[q], points[idx], directions)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(idx);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::vector<double> scalarize(const std::vector<std::vector<double>>& pop, std::span<const Direction> directions,
                              std::span<const double> weights) {
  const std::size_t k = directions.size();
  if (weights.size() != k) throw Error(ErrorCode::dimension_mismatch, "one weight per objective required");
  std::vector<double> psi(pop.size(), 0.0);
  if (pop.empty()) return psi;
  const double n = static_cast<double>(pop.size());
  for (std::size_t o = 0; o < k; ++o) {
    double mean = 0.0;
    for (const auto& p : pop) mean += p[o];
    mean /= n;
    double ss = 0.0;
    for (const auto& p : pop) ss += (p[o] - mean) * (p[o] - mean);
    const double sd = pop.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    const double sign = directions[o] == Direction::maximize ? 1.0 : -1.0;
    for (std::size_t d = 0; d < pop.size(); ++d) {
      const double z = sd > 0.0 ? (pop[d][o] - mean) / sd : pop[d][o];
      psi[d] += weights[o] * sign * z;
    }
  }
  return psi;
}

std::vector<double> scalarize(const std::vector<std::vector<double>>& pop, std::span<const Direction> directions,
                              double w) {
  const double weights[2] = {1.0 - w, w};
  return scalarize(pop, directions, std::span<const double>(weights, 2));
}

Eigen::VectorXd move_vector(const DesignSpace& space, std::span<const double> current, std::span<const double> target,
                            const FireflyStep& step, Rng& rng) {
  const std::size_t d = space.dim();
  if (current.size() != d || target.size() != d) throw Error(ErrorCode::dimension_mismatch, "move endpoints must match the space");
  double r2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double du = (target[i] - current[i]) / space[i].width();
    r2 += du * du;
  }
  const double beta = step.beta0 * std::exp(-step.gamma * r2);
  Eigen::VectorXd dx(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    const double w = space[i].width();
    const double du = beta * (target[i] - current[i]) / w + step.alpha * (rng.uniform() - 0.5);
    const double dest = std::clamp(current[i] + du * w, space[i].lower, space[i].upper);
    dx[static_cast<Eigen::Index>(i)] = dest - current[i];
  }
  return dx;
}

Eigen::VectorXd apply_move(const DesignSpace& space, std::span<const double> current,
                           std::span<const double> displacement) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(space.dim()));
  for (std::size_t i = 0; i < space.dim(); ++i) {
    out[static_cast<Eigen::Index>(i)] = std::clamp(current[i] + displacement[i], space[i].lower, space[i].upper);
  }
  return out;
}

bool ParetoArchive::insert(ArchiveEntry entry) {
  const std::size_t k = directions_.size();
  for (const auto& e : entries_) {
    bool at_least_as_good = true;
    for (std::size_t o = 0; o < k && at_least_as_good; ++o) {
      const double a = directions_[o] == Direction::maximize ? -e.objectives[o] : e.objectives[o];
      const double b = directions_[o] == Direction::maximize ? -entry.objectives[o] : entry.objectives[o];
      at_least_as_good = a <= b;
    }
    if (at_least_as_good) return false;
  }
  std::erase_if(entries_, [&](const ArchiveEntry& e) { return dominates(entry.objectives, e.objectives, directions_); });
  entries_.push_back(std::move(entry));
  return true;
}

bool ParetoArchive::mutually_non_dominated() const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (std::size_t j = 0; j < entries_.size(); ++j) {
      if (i != j && dominates(entries_[i].objectives, entries_[j].objectives, directions_)) return false;
    }
  }
  return true;
}

namespace {

std::span<const double> view(const Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

}  // namespace

MofaResult mofa_optimize(const DesignSpace& space, const std::vector<ObjectiveSpec>& objectives,
                         const std::vector<ConstraintSpec>& constraints, const MofaParams& params) {
  params.validate();
  if (objectives.empty()) throw Error(ErrorCode::invalid_argument, "MOFA needs at least one objective");
  const std::size_t K = params.population;
  const std::size_t d = space.dim();
  std::vector<Direction> directions;
  for (const auto& o : objectives) directions.push_back(o.direction);

  MofaResult result;
  result.archive = ParetoArchive(directions);
  Rng rng(params.seed);

  auto eval_objectives = [&](const Eigen::VectorXd& x) {
    std::vector<double> f;
    f.reserve(objectives.size());
    for (const auto& o : objectives) f.push_back(o.model(view(x)));
    ++result.objective_evaluations;
    return f;
  };

  // Constraint calls share one budget so the total never exceeds K·t_max·(1+max_regen).
  const std::size_t budget = K * params.t_max * (1 + params.max_regen);
  double best_violation = std::numeric_limits<double>::infinity();
  std::vector<double> cvals(constraints.size());
  // Sum of violations relative to max(|bound|, 1); 0 means feasible.
  auto eval_violation = [&](const Eigen::VectorXd& x) {
    if (constraints.empty()) return 0.0;
    ++result.constraint_evaluations;
    double total = 0.0;
    bool feasible = true;
    for (std::size_t c = 0; c < constraints.size(); ++c) {
      cvals[c] = constraints[c].model(view(x));
      total += constraints[c].violation(cvals[c]) / std::max(1.0, std::abs(constraints[c].bound));
      feasible = feasible && constraints[c].satisfied(cvals[c]);
    }
    if (!feasible && !(total > 0.0)) total = std::numeric_limits<double>::min();
    best_violation = std::min(best_violation, total);
    return total;
  };

  std::vector<Eigen::VectorXd> pop(K, Eigen::VectorXd(static_cast<Eigen::Index>(d)));
  std::vector<std::vector<double>> pop_obj(K);
  std::vector<double> pop_viol(K, 0.0);
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t v = 0; v < d; ++v) pop[i][static_cast<Eigen::Index>(v)] = space.from_unit(v, rng.uniform());
    pop_obj[i] = eval_objectives(pop[i]);
    pop_viol[i] = eval_violation(pop[i]);
    if (pop_viol[i] == 0.0) result.archive.insert({pop[i], pop_obj[i], cvals});
  }

  double alpha = params.alpha;
  for (std::size_t t = 0; t < params.t_max; ++t) {
    std::vector<std::size_t> feasible_idx;
    for (std::size_t i = 0; i < K; ++i) {
      if (pop_viol[i] == 0.0) feasible_idx.push_back(i);
    }
    std::vector<std::vector<double>> feasible_obj;
    for (std::size_t i : feasible_idx) feasible_obj.push_back(pop_obj[i]);
    std::vector<std::size_t> nd;
    for (std::size_t k : non_dominated(feasible_obj, directions)) nd.push_back(feasible_idx[k]);

    const FireflyStep step{params.beta0, params.gamma, alpha};
    std::vector<Eigen::VectorXd> next = pop;
    std::vector<std::vector<double>> next_obj = pop_obj;
    std::vector<double> next_viol = pop_viol;

    for (std::size_t i = 0; i < K; ++i) {
      const bool feasible_i = pop_viol[i] == 0.0;
      std::vector<std::size_t> attractors;
      if (feasible_i) {
        for (std::size_t j : nd) {
          if (dominates(pop_obj[j], pop_obj[i], directions)) attractors.push_back(j);
        }
      } else if (!nd.empty()) {
        attractors = nd;
      } else {
        for (std::size_t j = 0; j < K; ++j) {
          if (pop_viol[j] < pop_viol[i]) attractors.push_back(j);
        }
      }
      bool accepted = false;
      for (std::size_t attempt = 0; attempt <= params.max_regen && !accepted; ++attempt) {
        if (!constraints.empty() && result.constraint_evaluations >= budget) break;
        std::size_t target = i;
        if (!attractors.empty()) {
          target = attractors[rng.index(attractors.size())];
        } else if (feasible_i) {
          std::vector<double> weights(objectives.size());
          if (objectives.size() == 2) {
            const double w = rng.uniform();
            weights = {1.0 - w, w};
          } else {
            double sum = 0.0;
            for (auto& w : weights) sum += (w = -std::log(1.0 - rng.uniform()));
            for (auto& w : weights) w /= sum;
          }
          const auto psi = scalarize(feasible_obj, directions, weights);
          target = feasible_idx[static_cast<std::size_t>(std::max_element(psi.begin(), psi.end()) - psi.begin())];
        }
        const Eigen::VectorXd dx = move_vector(space, view(pop[i]), view(pop[target]), step, rng);
        Eigen::VectorXd dest = apply_move(space, view(pop[i]), view(dx));

        const double viol = eval_violation(dest);
        if (viol == 0.0 || (!feasible_i && viol < pop_viol[i])) {
          accepted = true;
          next_obj[i] = eval_objectives(dest);
          next_viol[i] = viol;
          if (viol == 0.0) result.archive.insert({dest, next_obj[i], cvals});
          next[i] = std::move(dest);
        }
      }
      if (!accepted) ++result.rejected_moves;
    }

    pop = std::move(next);
    pop_obj = std::move(next_obj);
    pop_viol = std::move(next_viol);
    alpha *= params.alpha_decay;
    result.iterations = t + 1;
    if (params.verify_archive && !result.archive.mutually_non_dominated()) {
      throw std::logic_error("MOFA archive lost mutual non-domination at iteration " + std::to_string(t));
    }
  }

  if (result.archive.empty()) {
    throw InfeasibleError("MOFA found no design satisfying the constraints; smallest total violation " +
                              format_double(best_violation),
                          best_violation);
  }
  return result;
}

std::string archive_to_csv(const ParetoArchive& archive, std::span<const std::string> variable_names,
                           std::span<const std::string> objective_names, std::span<const std::string> constraint_names) {
  std::string out;
  std::vector<std::string> header(variable_names.begin(), variable_names.end());
  header.insert(header.end(), objective_names.begin(), objective_names.end());
  header.insert(header.end(), constraint_names.begin(), constraint_names.end());
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& e : archive.entries()) {
    std::vector<double> row(e.design.data(), e.design.data() + e.design.size());
    row.insert(row.end(), e.objectives.begin(), e.objectives.end());
    row.insert(row.end(), e.constraints.begin(), e.constraints.end());
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_double(row[i]);
    out += '\n';
  }
  return out;
}

}  // namespace ivams
