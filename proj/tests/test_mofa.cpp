#include <cmath>

#include <gtest/gtest.h>

#include "ivams/error.hpp"
#include "ivams/mofa.hpp"
#include "ivams/oracle.hpp"
#include "ivams/rng.hpp"

using namespace ivams;

namespace {

// O(n²) reference: i survives unless some j is no worse everywhere and
// strictly better somewhere.
std::vector<std::size_t> brute_force_nd(const std::vector<std::vector<double>>& pts, const std::vector<Direction>& dirs) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
      bool no_worse = true, better = false;
      for (std::size_t k = 0; k < dirs.size(); ++k) {
        const double a = dirs[k] == Direction::maximize ? pts[j][k] : -pts[j][k];
        const double b = dirs[k] == Direction::maximize ? pts[i][k] : -pts[i][k];
        if (a < b) no_worse = false;
        if (a > b) better = true;
      }
      dominated = no_worse && better;
    }
    if (!dominated) out.push_back(i);
  }
  return out;
}

// Distance from (f1, f2) to the curve f2 = (1 - f1)², f1 in [0, 1], on a dense grid.
double front_distance(double f1, double f2) {
  double best = INFINITY;
  for (int k = 0; k <= 20000; ++k) {
    const double x = k / 20000.0;
    best = std::min(best, std::hypot(f1 - x, f2 - (1 - x) * (1 - x)));
  }
  return best;
}

std::vector<ObjectiveSpec> convex_objectives() {
  return {{"f1", Direction::minimize, [](std::span<const double> x) { return x[0]; }},
          {"f2", Direction::minimize, [](std::span<const double> x) {
             double s = (1 - x[0]) * (1 - x[0]);
             for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * x[i];
             return s;
           }}};
}

}  // namespace

TEST(Dominance, Examples) {
  const std::vector<Direction> dirs{Direction::maximize, Direction::minimize};
  const std::vector<double> a{5, 80}, b{4, 90};
  EXPECT_TRUE(dominates(a, b, dirs));
  EXPECT_FALSE(dominates(b, a, dirs));
  EXPECT_FALSE(dominates(a, a, dirs));
  EXPECT_EQ(non_dominated({{5, 80}, {4, 90}}, dirs), (std::vector<std::size_t>{0}));
  EXPECT_EQ(non_dominated({{1, 1}}, dirs), (std::vector<std::size_t>{0}));
  EXPECT_TRUE(non_dominated({}, dirs).empty());
}

TEST(Dominance, FastFilterMatchesBruteForce) {
  Rng r(21);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = 2 + r.index(3), n = 1 + r.index(200);
    std::vector<Direction> dirs(k);
    for (auto& d : dirs) d = r.index(2) ? Direction::maximize : Direction::minimize;
    std::vector<std::vector<double>> pts(n, std::vector<double>(k));
    for (auto& p : pts) {
      for (auto& v : p) v = std::round(r.uniform(0, 10));  // ties on purpose
    }
    ASSERT_EQ(non_dominated(pts, dirs), brute_force_nd(pts, dirs)) << "trial " << t;
  }
}

TEST(Scalarize, Examples) {
  const std::vector<Direction> dirs{Direction::maximize, Direction::minimize};
  const std::vector<std::vector<double>> pop{{1, 10}, {3, 30}, {5, 20}};
  const auto w0 = scalarize(pop, dirs, 0.0);
  const auto w1 = scalarize(pop, dirs, 1.0);
  // normalized SR: mean 3, sd 2; normalized PD: mean 20, sd 10
  EXPECT_NEAR(w0[0], -1.0, 1e-12);
  EXPECT_NEAR(w0[2], 1.0, 1e-12);
  EXPECT_NEAR(w1[0], 1.0, 1e-12);
  EXPECT_NEAR(w1[1], -1.0, 1e-12);
  const std::vector<std::vector<double>> sym{{1, 1}, {-1, -1}};
  for (double v : scalarize(sym, dirs, 0.5)) EXPECT_NEAR(v, 0.0, 1e-12);
  // zero spread: entered raw
  const std::vector<std::vector<double>> flat{{2, 7}, {4, 7}};
  EXPECT_NEAR(scalarize(flat, dirs, 1.0)[0], -7.0, 1e-12);
}

TEST(MoveVector, Examples) {
  const DesignSpace s({{"a", 0, 10}, {"b", -1, 1}});
  Rng r(1);
  const std::vector<double> c{5, 0}, t{7, 0.5};
  const auto zero = move_vector(s, c, c, {1.0, 1.0, 0.0}, r);
  EXPECT_EQ(zero.norm(), 0.0);
  const auto full = move_vector(s, c, t, {0.8, 0.0, 0.0}, r);
  EXPECT_NEAR(full[0], 0.8 * 2.0, 1e-12);
  EXPECT_NEAR(full[1], 0.8 * 0.5, 1e-12);
  // r² in unit-cube coordinates: 0.2² + 0.25²
  const auto damped = move_vector(s, c, t, {1.0, 2.0, 0.0}, r);
  EXPECT_NEAR(damped[0], std::exp(-2.0 * (0.04 + 0.0625)) * 2.0, 1e-12);
  const std::vector<double> edge{9.5, 0.9}, far{30, 5};
  const auto dx = move_vector(s, edge, far, {1.0, 0.0, 0.0}, r);
  const auto dest = apply_move(s, edge, std::vector<double>(dx.data(), dx.data() + 2));
  EXPECT_EQ(dest[0], 10.0);
  EXPECT_EQ(dest[1], 1.0);
}

TEST(ParetoArchive, KeepsMutuallyNonDominated) {
  ParetoArchive a({Direction::minimize, Direction::minimize});
  EXPECT_TRUE(a.insert({Eigen::Vector2d(0, 0), {1, 5}, {}}));
  EXPECT_TRUE(a.insert({Eigen::Vector2d(1, 0), {5, 1}, {}}));
  EXPECT_FALSE(a.insert({Eigen::Vector2d(2, 0), {6, 6}, {}}));
  EXPECT_FALSE(a.insert({Eigen::Vector2d(3, 0), {1, 5}, {}}));  // duplicate objectives
  EXPECT_TRUE(a.insert({Eigen::Vector2d(4, 0), {0, 0}, {}}));
  EXPECT_EQ(a.size(), 1u);
  EXPECT_TRUE(a.mutually_non_dominated());
}

TEST(Mofa, ConvexFrontWithinTolerance) {
  const DesignSpace s({{"x1", 0, 1}, {"x2", 0, 1}, {"x3", 0, 1}});
  MofaParams p;
  const auto res = mofa_optimize(s, convex_objectives(), {}, p);
  ASSERT_GT(res.archive.size(), 5u);
  EXPECT_TRUE(res.archive.mutually_non_dominated());
  double worst = 0;
  for (const auto& e : res.archive.entries()) worst = std::max(worst, front_distance(e.objectives[0], e.objectives[1]));
  EXPECT_LT(worst, 0.05);
}

TEST(Mofa, SeedDeterministic) {
  const DesignSpace s({{"x1", 0, 1}, {"x2", 0, 1}});
  MofaParams p;
  p.t_max = 50;
  const auto a = mofa_optimize(s, convex_objectives(), {}, p);
  const auto b = mofa_optimize(s, convex_objectives(), {}, p);
  ASSERT_EQ(a.archive.size(), b.archive.size());
  for (std::size_t i = 0; i < a.archive.size(); ++i) {
    EXPECT_EQ(a.archive.entries()[i].design, b.archive.entries()[i].design);
  }
  p.seed = 2;
  const auto c = mofa_optimize(s, convex_objectives(), {}, p);
  EXPECT_FALSE(c.archive.size() == a.archive.size() &&
               c.archive.entries()[0].design == a.archive.entries()[0].design);
}

TEST(Mofa, ConstrainedOpampArchiveFeasible) {
  CachedOracle oracle(builtin_opamp_oracle());
  const auto& space = oracle.oracle().space;
  std::vector<ObjectiveSpec> obj{{"SR", Direction::maximize, oracle.bind("SR")},
                                 {"PD", Direction::minimize, oracle.bind("PD")}};
  std::vector<ConstraintSpec> con{{"A0", oracle.bind("A0"), 43, Sense::greater},
                                  {"BW", oracle.bind("BW"), 50, Sense::greater},
                                  {"PM", oracle.bind("PM"), 70, Sense::greater}};
  MofaParams p;
  p.t_max = 200;
  p.verify_archive = true;
  const auto res = mofa_optimize(space, obj, con, p);
  ASSERT_FALSE(res.archive.empty());
  EXPECT_TRUE(res.archive.mutually_non_dominated());
  const Oracle plain = builtin_opamp_oracle();
  for (const auto& e : res.archive.entries()) {
    const auto y = plain(std::vector<double>(e.design.data(), e.design.data() + e.design.size()));
    EXPECT_GT(y[0], 43);
    EXPECT_GT(y[1], 50);
    EXPECT_GT(y[2], 70);
    EXPECT_TRUE(space.contains(std::vector<double>(e.design.data(), e.design.data() + e.design.size())));
  }
  EXPECT_LE(res.constraint_evaluations, p.population * p.t_max * (1 + p.max_regen));
  EXPECT_LE(res.objective_evaluations, p.population * p.t_max * (1 + p.max_regen));
}

TEST(Mofa, InfeasibleRunCarriesViolation) {
  const DesignSpace s({{"x1", 0, 1}, {"x2", 0, 1}});
  std::vector<ConstraintSpec> con{{"x1", [](std::span<const double> x) { return x[0]; }, 2.0, Sense::greater}};
  MofaParams p;
  p.t_max = 20;
  try {
    mofa_optimize(s, convex_objectives(), con, p);
    FAIL();
  } catch (const InfeasibleError& e) {
    EXPECT_EQ(e.code(), ErrorCode::infeasible);
    EXPECT_NEAR(e.best_violation(), 0.5, 1e-9);  // (2 - 1) / |2|
  }
}

TEST(Mofa, ParamsValidated) {
  MofaParams p;
  p.population = 1;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.max_regen = 0;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.t_max = 0;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.population = 50;
  p.t_max = 5000;
  EXPECT_NO_THROW(p.validate());
}

TEST(Mofa, ThreeObjectivesRun) {
  const DesignSpace s({{"x1", 0, 1}, {"x2", 0, 1}});
  std::vector<ObjectiveSpec> obj = convex_objectives();
  obj.push_back({"f3", Direction::maximize, [](std::span<const double> x) { return x[1]; }});
  MofaParams p;
  p.t_max = 30;
  p.verify_archive = true;
  const auto res = mofa_optimize(s, obj, {}, p);
  EXPECT_TRUE(res.archive.mutually_non_dominated());
}
