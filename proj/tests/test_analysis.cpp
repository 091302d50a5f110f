#include <gtest/gtest.h>

#include <algorithm>

#include "coopnet/analysis.hpp"
#include "coopnet/rng.hpp"

using namespace coopnet;

namespace {

RunRecord record(std::vector<double> errors) {
  RunRecord r;
  r.errors = std::move(errors);
  return r;
}

IterationTrace trace(std::size_t n, std::vector<double> residuals) {
  IterationTrace t;
  t.n_targets = n;
  for (std::size_t k = 0; k < residuals.size(); ++k) {
    IterationRecord it;
    it.k = k + 1;
    it.residual = residuals[k];
    t.iterations.push_back(it);
  }
  return t;
}

}  // namespace

TEST(PositionErrors, FromEstimates) {
  Scenario s;
  s.targets_true = {Point(1.0, 1.0)};
  s.anchor_links = {{}};
  s.target_links = {{}};
  EXPECT_EQ(target_errors({Point(1.0, 1.0)}, s), std::vector<double>{0.0});
  EXPECT_EQ(target_errors({Point(4.0, 5.0)}, s), std::vector<double>{5.0});
}

TEST(PositionErrors, Flattening) {
  const std::vector<RunRecord> recs{record({1.0}), record({3.0})};
  EXPECT_EQ(position_errors(recs), (std::vector<double>{1.0, 3.0}));
  EXPECT_TRUE(position_errors(std::vector<RunRecord>{}).empty());
}

TEST(PositionErrors, MismatchedTargetCountThrows) {
  const std::vector<RunRecord> recs{record({1.0}), record({3.0, 4.0})};
  EXPECT_THROW(position_errors(recs), std::invalid_argument);
}

TEST(PositionErrors, SkipsFailedRecords) {
  std::vector<RunRecord> recs{record({1.0}), record({})};
  recs[1].failed = true;
  EXPECT_EQ(position_errors(recs), std::vector<double>{1.0});
}

TEST(PositionErrorsProperty, PermutationInvariantMultiset) {
  Rng rng(1);
  std::vector<RunRecord> recs;
  for (int m = 0; m < 20; ++m) recs.push_back(record({rng.uniform(), rng.uniform(), rng.uniform()}));
  auto a = position_errors(recs);
  std::reverse(recs.begin(), recs.end());
  auto b = position_errors(recs);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
}

TEST(EmpiricalCdf, SmallExamples) {
  const std::vector<double> e{1.0, 2.0, 3.0};
  const std::vector<double> grid{0.5, 2.0, 10.0};
  const auto c = empirical_cdf(e, grid);
  EXPECT_EQ(c.cdf[0], 0.0);
  EXPECT_DOUBLE_EQ(c.cdf[1], 2.0 / 3.0);
  EXPECT_EQ(c.cdf[2], 1.0);
}

TEST(EmpiricalCdf, Errors) {
  const std::vector<double> grid{1.0};
  EXPECT_THROW(empirical_cdf(std::vector<double>{}, grid), std::invalid_argument);
  const std::vector<double> unsorted{2.0, 1.0};
  EXPECT_THROW(empirical_cdf(std::vector<double>{1.0}, unsorted), std::invalid_argument);
}

// Law of large numbers: Uniform[0,10] has CDF(5) = 0.5; the estimate from
// 1e5 samples has standard error ~0.0016.
TEST(EmpiricalCdf, UniformSampleAtMedian) {
  Rng rng(12);
  std::vector<double> e(100000);
  for (auto& v : e) v = rng.uniform(0.0, 10.0);
  const std::vector<double> grid{5.0};
  EXPECT_NEAR(empirical_cdf(e, grid).cdf[0], 0.5, 0.01);
}

TEST(EmpiricalCdfProperty, MonotoneBoundedAndTerminal) {
  Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> e(1 + static_cast<std::size_t>(rng.uniform() * 300));
    for (auto& v : e) v = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.0, 50.0);
    const auto grid = default_cdf_grid(e);
    const auto c = empirical_cdf(e, grid);
    for (std::size_t k = 0; k < c.cdf.size(); ++k) {
      ASSERT_GE(c.cdf[k], 0.0);
      ASSERT_LE(c.cdf[k], 1.0);
      if (k > 0) ASSERT_GE(c.cdf[k], c.cdf[k - 1]);
    }
    const std::vector<double> top{*std::max_element(e.begin(), e.end())};
    ASSERT_EQ(empirical_cdf(e, top).cdf[0], 1.0);
    const auto step = step_cdf(e);
    ASSERT_EQ(step.cdf.back(), 1.0);
  }
}

TEST(DefaultCdfGrid, SpansToHighQuantile) {
  std::vector<double> e;
  for (int k = 1; k <= 1000; ++k) e.push_back(k);
  const auto g = default_cdf_grid(e);
  ASSERT_EQ(g.size(), 200u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 999.0);
  EXPECT_EQ(default_cdf_grid(std::vector<double>{0.0, 0.0}).back(), 1.0);
}

TEST(AverageResidual, AllConvergedAtFirstSweep) {
  const std::vector<IterationTrace> ts{trace(3, {0.0}), trace(3, {0.0})};
  EXPECT_EQ(average_residual(ts, 3, 4).mean_residual, std::vector<double>(4, 0.0));
}

TEST(AverageResidual, SingleRunScaledByTargets) {
  const std::vector<IterationTrace> ts{trace(4, {8.0, 2.0})};
  EXPECT_EQ(average_residual(ts, 4).mean_residual, (std::vector<double>{2.0, 0.5}));
}

TEST(AverageResidual, ArithmeticMean) {
  const std::vector<IterationTrace> ts{trace(1, {2.0, 1.0}), trace(1, {4.0, 3.0})};
  EXPECT_EQ(average_residual(ts, 1).mean_residual, (std::vector<double>{3.0, 2.0}));
}

TEST(AverageResidual, EarlyStopPadsWithZero) {
  const std::vector<IterationTrace> ts{trace(1, {2.0}), trace(1, {4.0, 2.0})};
  EXPECT_EQ(average_residual(ts, 1).mean_residual, (std::vector<double>{3.0, 1.0}));
}

TEST(AverageResidual, MismatchedTargetsThrows) {
  const std::vector<IterationTrace> ts{trace(2, {1.0})};
  EXPECT_THROW(average_residual(ts, 3), std::invalid_argument);
}

TEST(AverageResidualProperty, IdenticalTracesEqualOneScaled) {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> r(10);
    for (auto& v : r) v = rng.uniform(0, 4);
    const std::size_t n = 1 + t % 7;
    const std::vector<IterationTrace> ts(1 + t % 5, trace(n, r));
    const auto c = average_residual(ts, n);
    for (std::size_t k = 0; k < r.size(); ++k) ASSERT_NEAR(c.mean_residual[k], r[k] / n, 1e-15);
  }
}
