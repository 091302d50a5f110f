// coopnet: command-line front end.
//
//   coopnet run <config.json> [--seed S] [--out DIR] [--algorithms ppm,pocs]
//                             [--n-realizations N] [--threads T]
//   coopnet scenario <config.json> [--seed S] [--realization M] [--out FILE]
//   coopnet check [--seed S]
//   coopnet plot-data <run-dir> [--out DIR]

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coopnet/checks.hpp"
#include "coopnet/coopnet.hpp"

namespace {

std::vector<coopnet::Algorithm> parse_algorithm_list(const std::string& list) {
  std::vector<coopnet::Algorithm> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto a = coopnet::parse_algorithm(item, "--algorithms");
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  return out;
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed, std::optional<std::string> out,
            std::optional<std::string> algorithms, std::optional<std::size_t> n_realizations,
            std::optional<std::size_t> threads) {
  auto cfg = coopnet::load_experiment_config(config_path);
  if (seed) cfg.seed = *seed;
  if (out) cfg.output_dir = *out;
  if (algorithms) cfg.algorithms = parse_algorithm_list(*algorithms);
  if (n_realizations) cfg.n_realizations = *n_realizations;
  if (threads) cfg.threads = *threads;
  cfg.validate();

  const auto start = std::chrono::steady_clock::now();
  const auto manifest = coopnet::run_experiment(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "wrote " << manifest.files.size() + 1 << " files to " << cfg.output_dir << " in " << secs << " s";
  if (manifest.failures > 0) std::cerr << " (" << manifest.failures << " solver failures, see manifest.json)";
  std::cerr << '\n';
  return 0;
}

int cmd_scenario(const std::string& config_path, std::optional<std::uint64_t> seed, std::size_t realization,
                 std::optional<std::string> out) {
  auto cfg = coopnet::load_experiment_config(config_path);
  if (seed) cfg.seed = *seed;
  coopnet::Rng rng(coopnet::scenario_seed(cfg.seed, realization));
  const auto s = coopnet::generate_scenario(cfg.deployment, cfg.error_model, rng);
  const auto doc = coopnet::scenario_to_json(s);
  if (out) {
    coopnet::write_json_file(*out, doc);
  } else {
    std::cout << doc.dump(2) << '\n';
  }
  return 0;
}

int cmd_check(std::uint64_t seed) {
  bool ok = true;
  for (const auto& r : coopnet::run_checks(seed)) {
    std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  (" << r.detail << ")\n";
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative sensor network localization by parallel projections"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> algorithms;
  std::optional<std::size_t> n_realizations;
  std::optional<std::size_t> threads;

  auto* run = app.add_subcommand("run", "Run a Monte-Carlo experiment");
  run->add_option("config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--out", out, "Output directory");
  run->add_option("--algorithms", algorithms, "Comma-separated subset of ppm,pocs,ppb");
  run->add_option("--n-realizations", n_realizations, "Number of network realizations");
  run->add_option("--threads", threads, "Worker threads (0 = auto)");

  std::size_t realization = 1;
  auto* scen = app.add_subcommand("scenario", "Emit one generated scenario as JSON");
  scen->add_option("config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  scen->add_option("--seed", seed, "Master seed");
  scen->add_option("--realization", realization, "Realization index m (default 1)");
  scen->add_option("--out", out, "Write to file instead of stdout");

  std::uint64_t check_seed = 2024;
  auto* check = app.add_subcommand("check", "Run the invariant suite on random instances");
  check->add_option("--seed", check_seed, "Seed for the random instances");

  std::string run_dir;
  auto* plot = app.add_subcommand("plot-data", "Re-emit cdf.csv/residual.csv from stored run records");
  plot->add_option("run-dir", run_dir, "Output directory of a previous run")->required()->check(CLI::ExistingDirectory);
  plot->add_option("--out", out, "Directory for the CSVs (default: run-dir)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, seed, out, algorithms, n_realizations, threads);
    if (*scen) return cmd_scenario(config_path, seed, realization, out);
    if (*check) return cmd_check(check_seed);
    if (*plot) {
      coopnet::regenerate_plot_data(run_dir, out ? std::filesystem::path(*out) : std::filesystem::path{});
      return 0;
    }
  } catch (const coopnet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
