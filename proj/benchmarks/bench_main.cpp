#include <benchmark/benchmark.h>

#include <cmath>

#include "ivams/design_space.hpp"
#include "ivams/mofa.hpp"
#include "ivams/oracle.hpp"
#include "ivams/rng.hpp"
#include "ivams/training.hpp"

using namespace ivams;

namespace {

AnnModel random_model(std::size_t n, std::size_t m) {
  Rng r(1);
  AnnModel model = AnnModel::zeros(n, m);
  Eigen::VectorXd p(Eigen::Index(model.parameter_count()));
  for (auto& v : p) v = r.uniform(-1, 1);
  unpack_parameters(model, p);
  return model;
}

void BM_AnnPredict(benchmark::State& state) {
  const auto n = std::size_t(state.range(0)), m = std::size_t(state.range(1));
  const AnnModel model = random_model(n, m);
  const std::vector<double> x(n, 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(predict(model, x));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AnnPredict)->Args({1, 4})->Args({21, 10})->Args({14, 16});

void BM_Lhs(benchmark::State& state) {
  const Oracle o = builtin_pll_oracle();
  const auto n = std::size_t(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lhs_sample(o.space, n, ++seed));
  state.SetItemsProcessed(state.iterations() * std::int64_t(n));
}
BENCHMARK(BM_Lhs)->Arg(100)->Arg(500);

void BM_MofaConvex(benchmark::State& state) {
  const DesignSpace s({{"x1", 0, 1}, {"x2", 0, 1}, {"x3", 0, 1}});
  std::vector<ObjectiveSpec> obj{{"f1", Direction::minimize, [](std::span<const double> x) { return x[0]; }},
                                 {"f2", Direction::minimize, [](std::span<const double> x) {
                                    return (1 - x[0]) * (1 - x[0]) + x[1] * x[1] + x[2] * x[2];
                                  }}};
  MofaParams p;
  p.t_max = std::size_t(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mofa_optimize(s, obj, {}, p).archive.size());
  state.SetItemsProcessed(state.iterations() * std::int64_t(p.t_max));
}
BENCHMARK(BM_MofaConvex)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
