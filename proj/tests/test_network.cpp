#include <gtest/gtest.h>

#include <cmath>

#include "coopnet/network.hpp"
#include "coopnet/rng.hpp"

using namespace coopnet;

TEST(MeasureRange, ZeroNoiseIsExact) {
  Rng rng(1);
  EXPECT_EQ(measure_range(10.0, ErrorModel{NoiseMode::kLos, 0.0, 0.0, 0.0}, rng), 10.0);
  EXPECT_EQ(measure_range(10.0, ErrorModel{NoiseMode::kMixedNlos, 0.0, 1.0, 0.0}, rng), 10.0);
}

// Monte-Carlo oracle: E[error] = p_nlos * L / 2 = 2.0 m; the sample mean of
// 1e6 draws has standard error ~0.005 m.
TEST(MeasureRange, NlosMeanMatchesMixture) {
  Rng rng(99);
  const ErrorModel err{NoiseMode::kMixedNlos, 1.0, 0.2, 20.0};
  double sum = 0.0;
  const int draws = 1000000;
  for (int k = 0; k < draws; ++k) sum += measure_range(50.0, err, rng) - 50.0;
  EXPECT_NEAR(sum / draws, 2.0, 0.02);
}

TEST(MeasureRange, LosMeanAndSpread) {
  Rng rng(5);
  const ErrorModel err{NoiseMode::kLos, 1.0, 0.0, 0.0};
  double sum = 0.0, sq = 0.0;
  const int draws = 200000;
  for (int k = 0; k < draws; ++k) {
    const double e = measure_range(0.0, err, rng);
    sum += e;
    sq += e * e;
  }
  EXPECT_NEAR(sum / draws, 0.0, 0.01);
  EXPECT_NEAR(sq / draws, 1.0, 0.02);
}

TEST(GenerateScenario, DefaultProtocolIsSymmetricAndWithinRange) {
  DeploymentConfig dep;
  dep.n_targets = 20;
  Rng rng(3);
  const Scenario s = generate_scenario(dep, ErrorModel{}, rng);
  ASSERT_EQ(s.n_targets(), 20u);
  EXPECT_NO_THROW(s.validate());
  for (std::size_t i = 0; i < s.n_targets(); ++i) {
    EXPECT_GE(s.degree(i), 1u);
    for (const auto& l : s.anchor_links[i]) EXPECT_LE(distance(s.targets_true[i], s.references[l.node]), 40.0);
    for (const auto& l : s.target_links[i]) EXPECT_LE(distance(s.targets_true[i], s.targets_true[l.node]), 40.0);
  }
}

TEST(GenerateScenario, NoTargets) {
  DeploymentConfig dep;
  dep.n_targets = 0;
  Rng rng(3);
  const Scenario s = generate_scenario(dep, ErrorModel{}, rng);
  EXPECT_EQ(s.n_targets(), 0u);
  EXPECT_TRUE(s.anchor_links.empty());
  EXPECT_TRUE(connectivity_stats(s).anchor_degree.empty());
}

// Center-to-corner distance is 50*sqrt(2) = 70.71 m <= 80 m.
TEST(GenerateScenario, ForcedCenterTargetSeesAllCorners) {
  DeploymentConfig dep;
  dep.comm_range = 80.0;
  dep.target_positions = std::vector<Point>{{50.0, 50.0}};
  Rng rng(3);
  const Scenario s = generate_scenario(dep, ErrorModel{NoiseMode::kLos, 0.0, 0.0, 0.0}, rng);
  const auto st = connectivity_stats(s);
  EXPECT_EQ(st.anchor_degree, std::vector<std::size_t>{4});
  EXPECT_EQ(st.target_degree, std::vector<std::size_t>{0});
  for (const auto& l : s.anchor_links[0]) EXPECT_DOUBLE_EQ(l.range, 50.0 * std::sqrt(2.0));
}

TEST(GenerateScenario, TwoCloseTargetsLinkEachOther) {
  DeploymentConfig dep;
  dep.target_positions = std::vector<Point>{{45.0, 50.0}, {55.0, 50.0}};
  Rng rng(3);
  const Scenario s = generate_scenario(dep, ErrorModel{}, rng);
  const auto st = connectivity_stats(s);
  EXPECT_EQ(st.target_degree, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(s.target_links[0][0].range, s.target_links[1][0].range);
}

TEST(GenerateScenario, ForcedIsolatedTargetFails) {
  DeploymentConfig dep;
  dep.comm_range = 10.0;
  dep.target_positions = std::vector<Point>{{50.0, 50.0}};
  Rng rng(3);
  EXPECT_THROW(generate_scenario(dep, ErrorModel{}, rng), GenerationError);
}

TEST(GenerateScenario, ImpossibleConnectivityFails) {
  DeploymentConfig dep;
  dep.n_targets = 50;
  dep.comm_range = 0.01;
  Rng rng(3);
  EXPECT_THROW(generate_scenario(dep, ErrorModel{}, rng), GenerationError);
}

TEST(GenerateScenario, TargetsStayInReferenceHull) {
  DeploymentConfig dep;
  dep.references = {{0.0, 0.0}, {100.0, 0.0}, {0.0, 100.0}};
  dep.n_targets = 200;
  dep.comm_range = 60.0;
  Rng rng(8);
  const Scenario s = generate_scenario(dep, ErrorModel{}, rng);
  for (const auto& t : s.targets_true) EXPECT_LE(t[0] + t[1], 100.0 + 1e-9);
}

TEST(GenerateScenario, ThreeDimensional) {
  DeploymentConfig dep;
  dep.dimension = 3;
  dep.references = {{0, 0, 0}, {100, 0, 0}, {0, 100, 0}, {0, 0, 100}, {100, 100, 100}};
  dep.n_targets = 15;
  dep.comm_range = 60.0;
  Rng rng(4);
  const Scenario s = generate_scenario(dep, ErrorModel{}, rng);
  EXPECT_NO_THROW(s.validate());
  for (const auto& t : s.targets_true) EXPECT_EQ(t.dim(), 3u);
}

TEST(GenerateScenario, RejectsBadConfig) {
  Rng rng(1);
  DeploymentConfig dep;
  dep.comm_range = 0.0;
  EXPECT_THROW(generate_scenario(dep, ErrorModel{}, rng), std::invalid_argument);
  dep = {};
  dep.references.clear();
  EXPECT_THROW(generate_scenario(dep, ErrorModel{}, rng), std::invalid_argument);
  ErrorModel err;
  err.p_nlos = 1.5;
  EXPECT_THROW(generate_scenario(DeploymentConfig{}, err, rng), std::invalid_argument);
}

// Properties over many seeds: symmetry, exact link rule, noiseless ranges,
// determinism.
TEST(GenerateScenarioProperty, InvariantsOverSeeds) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    DeploymentConfig dep;
    dep.n_targets = 10 + seed % 21;
    dep.references = default_reference_layout(seed % 2 ? 4 : 5);
    const ErrorModel err{seed % 3 == 0 ? NoiseMode::kMixedNlos : NoiseMode::kLos, seed % 5 == 0 ? 0.0 : 1.0, 0.2, 20.0};
    Rng rng(seed);
    const Scenario s = generate_scenario(dep, err, rng);
    ASSERT_NO_THROW(s.validate()) << "seed " << seed;

    for (std::size_t i = 0; i < s.n_targets(); ++i) {
      std::vector<bool> linked(s.n_targets(), false);
      for (const auto& l : s.target_links[i]) linked[l.node] = true;
      for (std::size_t q = 0; q < s.n_targets(); ++q) {
        if (q == i) continue;
        ASSERT_EQ(linked[q], distance(s.targets_true[i], s.targets_true[q]) <= dep.comm_range) << "seed " << seed;
      }
      std::vector<bool> anchored(s.n_references(), false);
      for (const auto& l : s.anchor_links[i]) anchored[l.node] = true;
      for (std::size_t j = 0; j < s.n_references(); ++j) {
        ASSERT_EQ(anchored[j], distance(s.targets_true[i], s.references[j]) <= dep.comm_range) << "seed " << seed;
      }
      if (err.sigma == 0.0 && err.mode == NoiseMode::kLos) {
        for (const auto& l : s.anchor_links[i]) ASSERT_EQ(l.range, distance(s.targets_true[i], s.references[l.node]));
        for (const auto& l : s.target_links[i]) {
          const double d = i < l.node ? distance(s.targets_true[i], s.targets_true[l.node])
                                      : distance(s.targets_true[l.node], s.targets_true[i]);
          ASSERT_EQ(l.range, d);
        }
      }
    }

    if (seed % 50 == 0) {
      Rng again(seed);
      const Scenario t = generate_scenario(dep, err, again);
      ASSERT_EQ(s.targets_true, t.targets_true);
      for (std::size_t i = 0; i < s.n_targets(); ++i) {
        ASSERT_EQ(s.target_links[i].size(), t.target_links[i].size());
        for (std::size_t k = 0; k < s.target_links[i].size(); ++k) {
          ASSERT_EQ(s.target_links[i][k].range, t.target_links[i][k].range);
        }
      }
    }
  }
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  Rng a(derive_seed(1, 2, "scenario")), b(derive_seed(1, 2, "scenario")), c(derive_seed(1, 2, "init"));
  for (int k = 0; k < 100; ++k) {
    const auto va = a();
    EXPECT_EQ(va, b());
    EXPECT_NE(va, c());
  }
}
