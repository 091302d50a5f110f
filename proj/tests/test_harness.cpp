#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "coopnet/harness.hpp"

using namespace coopnet;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("coopnet_test_" + name);
  fs::remove_all(d);
  return d;
}

ExperimentConfig small_config(const fs::path& out) {
  ExperimentConfig cfg;
  cfg.deployment.n_targets = 8;
  cfg.n_realizations = 4;
  cfg.seed = 77;
  cfg.threads = 1;
  for (auto a : kAllAlgorithms) cfg.solver(a).max_iterations = 40;
  cfg.output_dir = out.string();
  return cfg;
}

}  // namespace

TEST(Seeds, StreamsAreDistinct) {
  EXPECT_NE(scenario_seed(1, 1), init_seed(1, 1));
  EXPECT_NE(scenario_seed(1, 1), scenario_seed(1, 2));
  EXPECT_NE(scenario_seed(1, 1), scenario_seed(2, 1));
  EXPECT_EQ(scenario_seed(5, 3), scenario_seed(5, 3));
}

TEST(Harness, SingleNoiselessTargetRecovered) {
  ExperimentConfig cfg;
  cfg.deployment.comm_range = 100;
  cfg.deployment.target_positions = std::vector<Point>{{30.0, 40.0}};
  cfg.deployment.n_targets = 1;
  cfg.error_model.sigma = 0.0;
  cfg.algorithms = {Algorithm::kPpm};
  cfg.n_realizations = 1;
  const auto r = run_realizations(cfg);
  ASSERT_EQ(r.size(), 1u);
  ASSERT_EQ(r[0].records.size(), 1u);
  EXPECT_LT(r[0].records[0].errors[0], 0.1);
}

TEST(Harness, ScenariosIndependentOfAlgorithmSelection) {
  auto a = small_config("unused");
  auto b = a;
  b.algorithms = {Algorithm::kPpb};
  const auto ra = run_realization(a, 3);
  const auto rb = run_realization(b, 3);
  EXPECT_EQ(ra.scenario.targets_true, rb.scenario.targets_true);
  EXPECT_EQ(ra.records.back().errors, rb.records.back().errors);
}

TEST(Harness, ThreadCountDoesNotChangeResults) {
  auto a = small_config("unused");
  auto b = a;
  b.threads = 3;
  const auto ra = run_realizations(a);
  const auto rb = run_realizations(b);
  ASSERT_EQ(ra.size(), rb.size());
  for (std::size_t m = 0; m < ra.size(); ++m) {
    ASSERT_EQ(ra[m].m, rb[m].m);
    for (std::size_t k = 0; k < ra[m].records.size(); ++k) {
      ASSERT_EQ(ra[m].records[k].estimate, rb[m].records[k].estimate);
    }
  }
}

TEST(Harness, RunWritesLayoutAndIsDeterministic) {
  const fs::path d1 = fresh_dir("det1");
  const fs::path d2 = fresh_dir("det2");
  auto c1 = small_config(d1);
  auto c2 = small_config(d2);
  c2.threads = 2;
  const auto m1 = run_experiment(c1);
  run_experiment(c2);
  EXPECT_EQ(m1.failures, 0u);
  EXPECT_TRUE(fs::exists(d1 / "scenarios/scenario_0001.json"));
  EXPECT_TRUE(fs::exists(d1 / "runs/run_0004_ppb.json"));
  EXPECT_EQ(m1.files.size(), 4u + 12u + 2u);
  EXPECT_EQ(slurp(d1 / "cdf.csv"), slurp(d2 / "cdf.csv"));
  EXPECT_EQ(slurp(d1 / "residual.csv"), slurp(d2 / "residual.csv"));

  const json man = read_json_file(d1 / "manifest.json");
  EXPECT_EQ(man["status"], "complete");
  EXPECT_EQ(man["rng"], kRngAlgorithm);
  EXPECT_EQ(man["config"]["experiment"]["seed"], 77);

  const std::string cdf = slurp(d1 / "cdf.csv");
  EXPECT_EQ(cdf.substr(0, cdf.find('\n')), "alpha,ppm,pocs,ppb");
  const std::string res = slurp(d1 / "residual.csv");
  EXPECT_EQ(res.substr(0, res.find('\n')), "k,ppm,pocs,ppb");
  EXPECT_EQ(std::count(res.begin(), res.end(), '\n'), 41);
}

TEST(Harness, PlotDataRegeneratesIdentically) {
  const fs::path d = fresh_dir("regen");
  const fs::path out = fresh_dir("regen_out");
  run_experiment(small_config(d));
  fs::create_directories(out);
  regenerate_plot_data(d, out);
  EXPECT_EQ(slurp(d / "cdf.csv"), slurp(out / "cdf.csv"));
  EXPECT_EQ(slurp(d / "residual.csv"), slurp(out / "residual.csv"));
}

TEST(Harness, IoErrorLeavesAbortedManifest) {
  const fs::path d = fresh_dir("abort");
  fs::create_directories(d);
  std::ofstream(d / "runs") << "not a directory";
  EXPECT_ANY_THROW(run_experiment(small_config(d)));
  const json man = read_json_file(d / "manifest.json");
  EXPECT_EQ(man["status"], "aborted");
  EXPECT_TRUE(man.contains("error"));
}

TEST(Harness, MakePlotDataSkipsFailedRuns) {
  RunRecord ok;
  ok.algorithm = "ppm";
  ok.errors = {1.0, 2.0};
  ok.trace.n_targets = 2;
  IterationRecord it;
  it.k = 1;
  it.residual = 4.0;
  ok.trace.iterations = {it};
  RunRecord bad;
  bad.algorithm = "ppm";
  bad.failed = true;
  bad.trace.n_targets = 2;
  const auto pd = make_plot_data({"ppm"}, {ok, bad}, 2, 2);
  ASSERT_EQ(pd.residual[0].values.size(), 2u);
  EXPECT_EQ(pd.residual[0].values[0], 2.0);
  EXPECT_EQ(pd.residual[0].values[1], 0.0);
  EXPECT_EQ(pd.cdf[0].values.back(), 1.0);
}
