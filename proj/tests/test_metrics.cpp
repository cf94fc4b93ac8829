#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "ivams/error.hpp"
#include "ivams/metrics.hpp"
#include "ivams/rng.hpp"

using namespace ivams;

namespace {

std::vector<double> random_vec(Rng& r, std::size_t n, double lo = -3, double hi = 3) {
  std::vector<double> v(n);
  for (auto& x : v) x = r.uniform(lo, hi);
  return v;
}

// Two-pass reference with a different accumulation order (reverse, Kahan).
double reference_rmse(const std::vector<double>& y, const std::vector<double>& yh) {
  double s = 0.0, c = 0.0;
  for (std::size_t k = y.size(); k-- > 0;) {
    const double e = (yh[k] - y[k]) * (yh[k] - y[k]) - c;
    const double t = s + e;
    c = (t - s) - e;
    s = t;
  }
  return std::sqrt(s / double(y.size()));
}

FitReport report(double rmse_v, std::size_t params) {
  FitReport r;
  r.rmse = rmse_v;
  r.parameters = params;
  r.r2_verify = 1.0 - rmse_v;
  return r;
}

}  // namespace

TEST(Metrics, RmseExamples) {
  const std::vector<double> y{0, 2}, z{0, 0};
  EXPECT_EQ(rmse(y, y), 0.0);
  EXPECT_DOUBLE_EQ(rmse(y, z), std::sqrt(2.0));
  Rng r(1);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_vec(r, 1 + r.index(200)), b = random_vec(r, a.size());
    EXPECT_NEAR(rmse(a, b), reference_rmse(a, b), 1e-12);
  }
  const std::vector<double> one{1.0};
  EXPECT_THROW(rmse(y, one), Error);
  EXPECT_THROW(rmse(std::vector<double>{}, std::vector<double>{}), Error);
}

TEST(Metrics, RSquaredExamples) {
  const std::vector<double> y{1, 2, 3, 4};
  EXPECT_EQ(r_squared(y, y), 1.0);
  const std::vector<double> m(4, 2.5);
  EXPECT_EQ(r_squared(y, m), 0.0);
  const std::vector<double> bad{4, 3, 2, 1};
  EXPECT_LT(r_squared(y, bad), 0.0);
  const std::vector<double> c{2, 2, 2};
  try {
    r_squared(c, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::undefined_variance);
  }
}

TEST(Metrics, RelativeErrors) {
  const std::vector<double> y{1, 2, 3, 4};
  EXPECT_EQ(rmae(y, y), 0.0);
  EXPECT_EQ(rrse(y, y), 0.0);
  const std::vector<double> m(4, 2.5);
  EXPECT_DOUBLE_EQ(rrse(y, m), 1.0);
  // max |e| = 1.5, sample stddev = sqrt(5/3)
  EXPECT_DOUBLE_EQ(rmae(y, m), 1.5 / std::sqrt(5.0 / 3.0));
}

TEST(Metrics, RrseSquaredIsOneMinusR2) {
  Rng r(2);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_vec(r, 2 + r.index(100)), b = random_vec(r, a.size());
    const double q = rrse(a, b);
    EXPECT_NEAR(q * q, 1.0 - r_squared(a, b), 1e-12);
  }
}

TEST(Metrics, TranslationAndScaling) {
  Rng r(3);
  const auto a = random_vec(r, 30), b = random_vec(r, 30);
  auto a2 = a, b2 = b;
  for (auto& v : a2) v += 100.0;
  for (auto& v : b2) v += 100.0;
  EXPECT_NEAR(rmse(a2, b2), rmse(a, b), 1e-12);
  EXPECT_NEAR(rrse(a2, b2), rrse(a, b), 1e-10);
  EXPECT_NEAR(rmae(a2, b2), rmae(a, b), 1e-10);
  std::vector<double> as = a, bs = b;
  for (auto& v : as) v *= 7.0;
  for (auto& v : bs) v *= 7.0;
  EXPECT_NEAR(rmse(as, bs), 7.0 * rmse(a, b), 1e-12);
}

TEST(Metrics, SelectBest) {
  std::vector<FitReport> one{report(1.0, 5)};
  EXPECT_EQ(select_best(one, SelectionCriterion::verify_rmse), 0u);
  std::vector<FitReport> two{report(2.0, 5), report(1.0, 5)};
  EXPECT_EQ(select_best(two, SelectionCriterion::verify_rmse), 1u);
  EXPECT_EQ(select_best(two, SelectionCriterion::verify_r2), 1u);
  std::vector<FitReport> tie{report(1.0, 50), report(1.0, 10)};
  EXPECT_EQ(select_best(tie, SelectionCriterion::verify_rmse), 1u);
  std::vector<FitReport> none;
  EXPECT_THROW(select_best(none, SelectionCriterion::verify_rmse), Error);
}

TEST(Metrics, FitReportAndOverfitFlag) {
  const std::vector<double> yt{1, 2, 3, 4}, ht{1, 2, 3, 4};
  const std::vector<double> yv{1, 2, 3}, hv{3, 1, 2};
  const FitReport r = make_fit_report("tanh->purelin", "A0", 9, yt, ht, yv, hv);
  EXPECT_EQ(r.r2_train, 1.0);
  EXPECT_LT(r.r2_verify, 0.0);
  EXPECT_TRUE(r.overfit);
  EXPECT_EQ(r.n_train, 4u);
  EXPECT_EQ(r.n_verify, 3u);
  const std::vector<double> c{5, 5};
  const FitReport k = make_fit_report("x", "y", 1, c, c, c, c);
  EXPECT_TRUE(std::isnan(k.r2_train));
  EXPECT_FALSE(k.overfit);
}

TEST(Metrics, ReportsJsonRoundTripAndTable) {
  const std::vector<double> yt{1, 2, 3, 4}, ht{1.1, 2, 2.9, 4};
  const std::vector<double> c{5, 5};
  std::vector<FitReport> reps{make_fit_report("tanh->purelin", "A0", 73, yt, ht, yt, ht),
                              make_fit_report("poly2", "BW", 6, c, c, c, c)};
  const auto back = fit_reports_from_json_text(to_json_text(reps));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].rmse, reps[0].rmse);
  EXPECT_EQ(back[0].parameters, 73u);
  EXPECT_TRUE(std::isnan(back[1].r2_verify));
  const auto table = render_table(reps);
  EXPECT_NE(table.find("RMSE"), std::string::npos);
  EXPECT_NE(table.find("tanh->purelin"), std::string::npos);
}
