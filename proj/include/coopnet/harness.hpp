#pragma once

// Monte-Carlo experiment runner.
//
// Realization m draws its scenario from stream (seed, m, "scenario") and the
// solvers' initial points from (seed, m, "init"), so the scenarios never
// depend on which algorithms are selected and PPM/POCS start from the same
// random point. Realizations may run on several threads; outputs are always
// assembled in order of m.
//
// Output directory layout:
//   manifest.json            config, RNG identification, file list, failures
//   scenarios/scenario_MMMM.json
//   runs/run_MMMM_<alg>.json
//   cdf.csv                  alpha,<alg>...
//   residual.csv             k,<alg>...

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "coopnet/analysis.hpp"
#include "coopnet/config.hpp"
#include "coopnet/io.hpp"
#include "coopnet/network.hpp"
#include "coopnet/pocs.hpp"
#include "coopnet/ppb.hpp"
#include "coopnet/ppm.hpp"
#include "coopnet/rng.hpp"

namespace coopnet {

inline constexpr std::string_view kManifestFormat = "coopnet-manifest/1";

inline std::uint64_t scenario_seed(std::uint64_t master, std::size_t m) { return derive_seed(master, m, "scenario"); }
inline std::uint64_t init_seed(std::uint64_t master, std::size_t m) { return derive_seed(master, m, "init"); }

/// Runs one algorithm on a scenario. Initial points for PPM/POCS come from a
/// fresh init stream, so two algorithms with the same initializer start
/// identically.
inline SolveResult run_algorithm(Algorithm a, const Scenario& s, const SolverConfig& cfg, std::uint64_t init_stream) {
  Rng rng(init_stream);
  switch (a) {
    case Algorithm::kPpm: return solve_ppm(s, cfg, rng);
    case Algorithm::kPocs: return solve_pocs(s, cfg, rng);
    case Algorithm::kPpb: return solve_ppb(s, cfg);
  }
  throw std::logic_error("unknown algorithm");
}

struct Realization {
  std::size_t m = 0;
  std::uint64_t seed = 0;
  Scenario scenario;
  std::vector<RunRecord> records;  // in cfg.algorithms order
};

inline Realization run_realization(const ExperimentConfig& cfg, std::size_t m) {
  Realization r;
  r.m = m;
  r.seed = scenario_seed(cfg.seed, m);
  Rng rng(r.seed);
  r.scenario = generate_scenario(cfg.deployment, cfg.error_model, rng);
  for (auto a : cfg.algorithms) {
    const std::string name(algorithm_name(a));
    try {
      r.records.push_back(
          make_run_record(m, r.seed, name, r.scenario, run_algorithm(a, r.scenario, cfg.solver(a), init_seed(cfg.seed, m))));
    } catch (const NumericalFailure& e) {
      RunRecord failed;
      failed.realization = m;
      failed.scenario_seed = r.seed;
      failed.algorithm = name;
      failed.failed = true;
      failed.failure = e.what();
      failed.trace.n_targets = r.scenario.n_targets();
      r.records.push_back(std::move(failed));
    }
  }
  return r;
}

/// Runs realizations 1..N on `threads` workers (0 = hardware concurrency).
/// The first exception thrown by any realization is rethrown after all
/// workers stop.
inline std::vector<Realization> run_realizations(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.n_realizations;
  std::vector<Realization> out(n);
  std::size_t workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  workers = std::min(workers, n);

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto work = [&] {
    for (std::size_t idx = next++; idx < n; idx = next++) {
      try {
        out[idx] = run_realization(cfg, idx + 1);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

struct PlotData {
  std::vector<double> grid;
  std::vector<NamedColumn> cdf;       // one per algorithm
  std::vector<double> iterations;     // 1..K
  std::vector<NamedColumn> residual;  // one per algorithm
};

/// Shared CDF grid over the pooled errors of all algorithms, residual curves
/// padded to `iterations`.
inline PlotData make_plot_data(const std::vector<std::string>& algorithms, const std::vector<RunRecord>& records,
                               std::size_t n_targets, std::size_t iterations) {
  std::map<std::string, std::vector<RunRecord>> by_alg;
  for (const auto& r : records) by_alg[r.algorithm].push_back(r);

  std::vector<double> pooled;
  for (const auto& name : algorithms) {
    const auto e = position_errors(by_alg[name]);
    pooled.insert(pooled.end(), e.begin(), e.end());
  }
  PlotData pd;
  pd.grid = pooled.empty() ? std::vector<double>{0.0, 1.0} : default_cdf_grid(pooled);
  for (std::size_t k = 1; k <= iterations; ++k) pd.iterations.push_back(static_cast<double>(k));
  for (const auto& name : algorithms) {
    const auto errors = position_errors(by_alg[name]);
    NamedColumn cdf{name, {}};
    if (errors.empty()) {
      cdf.values.assign(pd.grid.size(), 0.0);
    } else {
      cdf.values = empirical_cdf(errors, pd.grid).cdf;
    }
    pd.cdf.push_back(std::move(cdf));

    std::vector<IterationTrace> traces;
    for (const auto& r : by_alg[name]) {
      if (!r.failed) traces.push_back(r.trace);
    }
    pd.residual.push_back({name, average_residual(traces, n_targets, iterations).mean_residual});
  }
  return pd;
}

inline void write_plot_data(const std::filesystem::path& dir, const PlotData& pd) {
  std::ostringstream cdf;
  write_columns_csv(cdf, "alpha", pd.grid, pd.cdf);
  write_text_file(dir / "cdf.csv", cdf.str());
  std::ostringstream res;
  write_columns_csv(res, "k", pd.iterations, pd.residual);
  write_text_file(dir / "residual.csv", res.str());
}

struct Manifest {
  json document;
  std::vector<std::string> files;  // relative to the output directory
  std::size_t failures = 0;
};

inline std::string realization_tag(std::size_t m) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04zu", m);
  return buf;
}

inline std::size_t residual_iterations(const ExperimentConfig& cfg) {
  std::size_t k = 0;
  for (auto a : cfg.algorithms) k = std::max(k, cfg.solver(a).max_iterations);
  return k;
}

/// Full experiment. On an I/O or generation error a manifest with status
/// "aborted" is written (when possible) before the error propagates.
inline Manifest run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::filesystem::path dir(cfg.output_dir);
  Manifest man;
  json failures = json::array();
  const auto write_manifest = [&](std::string_view status, const std::string& error) {
    json doc = {{"format", kManifestFormat},
                {"status", status},
                {"config", experiment_config_to_json(cfg)},
                {"rng", kRngAlgorithm},
                {"n_targets", cfg.deployment.target_positions ? cfg.deployment.target_positions->size()
                                                              : cfg.deployment.n_targets},
                {"residual_iterations", residual_iterations(cfg)},
                {"files", man.files},
                {"failures", failures}};
    if (!error.empty()) doc["error"] = error;
    man.document = doc;
    write_json_file(dir / "manifest.json", doc);
  };

  try {
    std::filesystem::create_directories(dir);
    const auto realizations = run_realizations(cfg);
    std::vector<RunRecord> all;
    for (const auto& r : realizations) {
      const std::string tag = realization_tag(r.m);
      const std::string scen = "scenarios/scenario_" + tag + ".json";
      write_json_file(dir / scen, scenario_to_json(r.scenario));
      man.files.push_back(scen);
      for (const auto& rec : r.records) {
        const std::string run = "runs/run_" + tag + "_" + rec.algorithm + ".json";
        write_json_file(dir / run, run_record_to_json(rec));
        man.files.push_back(run);
        if (rec.failed) {
          ++man.failures;
          failures.push_back({{"realization", rec.realization}, {"algorithm", rec.algorithm}, {"error", rec.failure}});
        }
        all.push_back(rec);
      }
    }
    std::vector<std::string> names;
    for (auto a : cfg.algorithms) names.emplace_back(algorithm_name(a));
    const std::size_t n = realizations.empty() ? 0 : realizations.front().scenario.n_targets();
    write_plot_data(dir, make_plot_data(names, all, n, residual_iterations(cfg)));
    man.files.push_back("cdf.csv");
    man.files.push_back("residual.csv");
    write_manifest("complete", "");
  } catch (const std::exception& e) {
    try {
      write_manifest("aborted", e.what());
    } catch (...) {
    }
    throw;
  }
  return man;
}

/// Rebuilds cdf.csv and residual.csv of a finished run from its manifest and
/// stored run records. Writes into out_dir (defaults to run_dir).
inline void regenerate_plot_data(const std::filesystem::path& run_dir, std::filesystem::path out_dir = {}) {
  if (out_dir.empty()) out_dir = run_dir;
  const json man = read_json_file(run_dir / "manifest.json");
  if (man.value("format", "") != kManifestFormat) throw ConfigError("manifest.format", "not a coopnet manifest");
  const ExperimentConfig cfg = experiment_config_from_json(man.at("config"));

  std::vector<std::filesystem::path> run_files;
  for (const auto& entry : std::filesystem::directory_iterator(run_dir / "runs")) {
    if (entry.path().extension() == ".json") run_files.push_back(entry.path());
  }
  std::vector<RunRecord> records;
  for (const auto& f : run_files) records.push_back(run_record_from_json(read_json_file(f)));
  std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return a.realization != b.realization ? a.realization < b.realization : a.algorithm < b.algorithm;
  });

  std::vector<std::string> names;
  for (auto a : cfg.algorithms) names.emplace_back(algorithm_name(a));
  const std::size_t n = man.at("n_targets").get<std::size_t>();
  write_plot_data(out_dir, make_plot_data(names, records, n, man.at("residual_iterations").get<std::size_t>()));
}

}  // namespace coopnet
