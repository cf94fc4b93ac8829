#include <cmath>

#include <gtest/gtest.h>

#include "ivams/error.hpp"
#include "ivams/rng.hpp"
#include "ivams/scaling.hpp"

using namespace ivams;

namespace {

Eigen::MatrixXd random_matrix(Rng& r, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    const double scale = std::pow(10.0, r.uniform(-6.0, 4.0));
    for (Eigen::Index i = 0; i < rows; ++i) m(i, c) = scale * r.uniform(-1.0, 1.0);
  }
  return m;
}

}  // namespace

TEST(Scaler, MeanStdMapsToZeroMeanUnitStd) {
  Eigen::MatrixXd x(4, 1);
  x << 1, 2, 3, 4;
  const Scaler s = fit_scaler(x, ScalerKind::meanstd);
  const auto y = s.apply(x);
  EXPECT_NEAR(y.mean(), 0.0, 1e-15);
  const double var = (y.array() - y.mean()).square().sum() / 3.0;
  EXPECT_NEAR(var, 1.0, 1e-14);
}

TEST(Scaler, MinMaxMapsOntoUnitInterval) {
  Eigen::MatrixXd x(3, 2);
  x << 0, 5, 10, 6, 5, 7;
  const Scaler s = fit_scaler(x, ScalerKind::minmax);
  const auto y = s.apply(x);
  EXPECT_DOUBLE_EQ(y(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(y(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(y(2, 0), 0.0);
  EXPECT_DOUBLE_EQ(y(0, 1), -1.0);
  EXPECT_DOUBLE_EQ(y(2, 1), 1.0);
  // Unseen data may leave [-1, 1].
  EXPECT_DOUBLE_EQ(s.apply(0, 20.0), 3.0);
}

TEST(Scaler, DegenerateColumnNamed) {
  Eigen::MatrixXd x(3, 2);
  x << 1, 4, 2, 4, 3, 4;
  const std::vector<std::string> names{"a", "b"};
  try {
    fit_scaler(x, ScalerKind::meanstd, names);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_column);
    EXPECT_NE(std::string(e.what()).find("'b'"), std::string::npos);
  }
  EXPECT_THROW(fit_scaler(x, ScalerKind::minmax, names), Error);
  EXPECT_NO_THROW(fit_scaler(x, ScalerKind::none, names));
}

TEST(Scaler, ConstantResponseOnlyCentered) {
  Eigen::VectorXd y = Eigen::VectorXd::Constant(5, 3.5);
  const Scaler s = fit_response_scaler(y);
  EXPECT_DOUBLE_EQ(s.apply(0, 3.5), 0.0);
  EXPECT_DOUBLE_EQ(s.invert(0, 1.0), 4.5);
}

TEST(Scaler, RoundTripRandomMatrices) {
  Rng r(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_matrix(r, 2 + static_cast<Eigen::Index>(r.index(50)), 1 + static_cast<Eigen::Index>(r.index(10)));
    for (ScalerKind k : {ScalerKind::none, ScalerKind::meanstd, ScalerKind::minmax}) {
      const Scaler s = fit_scaler(x, k);
      const auto back = s.invert(s.apply(x));
      const double err = ((back - x).array().abs().rowwise() / x.array().abs().colwise().maxCoeff()).maxCoeff();
      ASSERT_LT(err, 1e-12) << to_string(k);
    }
  }
}

TEST(Scaler, GainOffsetAgreeWithApply) {
  Eigen::MatrixXd x(3, 1);
  x << -2, 0, 7;
  for (ScalerKind k : {ScalerKind::none, ScalerKind::meanstd, ScalerKind::minmax}) {
    const Scaler s = fit_scaler(x, k);
    for (double v : {-3.0, 0.5, 11.0}) EXPECT_NEAR(s.apply(0, v), s.gain(0) * v + s.offset(0), 1e-14);
  }
}

TEST(Scaler, ParseKinds) {
  EXPECT_EQ(parse_scaler_kind("minmax"), ScalerKind::minmax);
  EXPECT_EQ(to_string(ScalerKind::meanstd), "meanstd");
  EXPECT_THROW(parse_scaler_kind("zscore"), Error);
}
