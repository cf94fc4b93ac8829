#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "ivams/design_space.hpp"
#include "ivams/error.hpp"
#include "ivams/rng.hpp"

using namespace ivams;

namespace {

DesignSpace box(std::size_t d) {
  std::vector<DesignVariable> v;
  for (std::size_t i = 0; i < d; ++i) v.push_back({"x" + std::to_string(i), -1.0 - double(i), 2.0 + 0.5 * double(i)});
  return DesignSpace(v);
}

// Independent stratification oracle: floor((x - lo) / width * n) hits every
// stratum exactly once.
bool stratified(const DesignSpace& s, const SampleMatrix& x) {
  const auto n = static_cast<std::size_t>(x.rows());
  for (std::size_t c = 0; c < s.dim(); ++c) {
    std::vector<int> hits(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
      const double v = x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      if (v < s[c].lower || v > s[c].upper) return false;
      auto k = static_cast<std::size_t>(std::floor((v - s[c].lower) / s[c].width() * double(n)));
      k = std::min(k, n - 1);
      ++hits[k];
    }
    if (std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; })) return false;
  }
  return true;
}

}  // namespace

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  EXPECT_NE(Rng(42).next(), c.next());
}

TEST(Rng, UniformAndIndexRanges) {
  Rng r(7);
  std::vector<int> counts(5, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ++counts[r.index(5)];
  }
  for (int c : counts) EXPECT_NEAR(c, 2000, 200);
}

TEST(Rng, DeriveDoesNotCollide) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 50; ++s) seen.insert(Rng::derive(1, s));
  EXPECT_EQ(seen.size(), 50u);
}

TEST(Rng, ShuffleIsPermutation) {
  Rng r(3);
  std::vector<int> v(100);
  for (int i = 0; i < 100; ++i) v[i] = i;
  shuffle(v.begin(), v.end(), r);
  auto sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(DesignSpace, RejectsBadVariables) {
  EXPECT_THROW(DesignSpace({}), Error);
  EXPECT_THROW(DesignSpace({{"a", 1.0, 1.0}}), Error);
  EXPECT_THROW(DesignSpace({{"a", 2.0, 1.0}}), Error);
  EXPECT_THROW(DesignSpace({{"1a", 0.0, 1.0}}), Error);
  EXPECT_THROW(DesignSpace({{"a", 0.0, 1.0}, {"a", 0.0, 2.0}}), Error);
  EXPECT_THROW(DesignSpace({{"a", 0.0, INFINITY}}), Error);
}

TEST(DesignSpace, UnitMappingAndClamp) {
  const DesignSpace s({{"w", 1e-6, 20e-6}, {"l", 0.18e-6, 1e-6}});
  EXPECT_DOUBLE_EQ(s.from_unit(0, 0.0), 1e-6);
  EXPECT_DOUBLE_EQ(s.from_unit(0, 1.0), 20e-6);
  EXPECT_NEAR(s.to_unit(1, s.from_unit(1, 0.3)), 0.3, 1e-12);
  std::vector<double> x{50e-6, 0.0};
  s.clamp(x);
  EXPECT_EQ(x[0], 20e-6);
  EXPECT_EQ(x[1], 0.18e-6);
  EXPECT_TRUE(s.contains(x));
  EXPECT_EQ(s.find("l"), 1u);
  EXPECT_EQ(s.find("zz"), 2u);
}

TEST(DesignSpace, JsonRoundTrip) {
  const DesignSpace s = box(3);
  const DesignSpace t = DesignSpace::from_json_text(s.to_json_text());
  ASSERT_EQ(t.dim(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(t[i].name, s[i].name);
    EXPECT_EQ(t[i].lower, s[i].lower);
    EXPECT_EQ(t[i].upper, s[i].upper);
  }
  EXPECT_THROW(DesignSpace::from_json_text("[{\"name\": \"a\"}]"), Error);
  EXPECT_THROW(DesignSpace::from_json_text("not json"), Error);
}

TEST(Lhs, OnePointPerStratum) {
  Rng r(99);
  for (int trial = 0; trial < 40; ++trial) {
    const auto d = 1 + r.index(25);
    const auto n = 1 + r.index(500);
    const DesignSpace s = box(d);
    ASSERT_TRUE(stratified(s, lhs_sample(s, n, r.next()))) << "d=" << d << " n=" << n;
  }
}

TEST(Lhs, ExamplesFromContract) {
  const DesignSpace s = box(16);
  EXPECT_EQ(lhs_sample(s, 500, 1).rows(), 500);
  const DesignSpace one({{"x", 0.0, 1.0}});
  const auto x = lhs_sample(one, 1, 5);
  EXPECT_GE(x(0, 0), 0.0);
  EXPECT_LE(x(0, 0), 1.0);
  EXPECT_THROW(lhs_sample(s, 0, 1), Error);
}

TEST(Lhs, SeedDeterminism) {
  const DesignSpace s = box(5);
  EXPECT_EQ(lhs_sample(s, 40, 8), lhs_sample(s, 40, 8));
  EXPECT_NE(lhs_sample(s, 40, 8), lhs_sample(s, 40, 9));
}

TEST(Lhs, DisjointSharesNoRow) {
  const DesignSpace s = box(2);
  const auto train = lhs_sample(s, 500, 1);
  const auto verify = lhs_disjoint(s, 150, train, 2);
  EXPECT_TRUE(stratified(s, verify));
  for (Eigen::Index i = 0; i < verify.rows(); ++i) {
    for (Eigen::Index j = 0; j < train.rows(); ++j) ASSERT_FALSE(verify.row(i) == train.row(j));
  }
}
