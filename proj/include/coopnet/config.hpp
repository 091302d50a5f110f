#pragma once

// Experiment configuration, read from a JSON document:
//
//   {
//     "format": "coopnet-config/1",
//     "deployment":  { "dimension": 2, "field_size": 100, "n_targets": 30,
//                      "references": 4 | [[x, y], ...], "comm_range": 40,
//                      "target_positions": [[x, y], ...] },
//     "error_model": { "mode": "los" | "nlos", "sigma": 1, "p_nlos": 0.2,
//                      "nlos_max": 20 },
//     "solver":      { "max_iterations": 300, "stop_tol": 1e-6,
//                      "initializer": "random-uniform" | "anchor-centroid",
//                      "diagnostics": true },
//     "solvers":     { "ppm": {...}, "pocs": {...}, "ppb": {...} },
//     "experiment":  { "algorithms": ["ppm", "pocs", "ppb"],
//                      "n_realizations": 100, "seed": 1, "output_dir": "out",
//                      "threads": 0 }
//   }
//
// Every section and key is optional. "solver" sets defaults for all three
// algorithms and "solvers.<name>" overrides them per algorithm. An integer
// "references" selects the first k points of the default layout. Unknown keys
// are rejected.

#include <array>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "coopnet/errors.hpp"
#include "coopnet/io.hpp"
#include "coopnet/network.hpp"
#include "coopnet/solver.hpp"

namespace coopnet {

inline constexpr std::string_view kConfigFormat = "coopnet-config/1";

enum class Algorithm { kPpm = 0, kPocs = 1, kPpb = 2 };
inline constexpr std::array<Algorithm, 3> kAllAlgorithms{Algorithm::kPpm, Algorithm::kPocs, Algorithm::kPpb};

inline std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kPpm: return "ppm";
    case Algorithm::kPocs: return "pocs";
    case Algorithm::kPpb: return "ppb";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view name, const std::string& path) {
  for (auto a : kAllAlgorithms) {
    if (algorithm_name(a) == name) return a;
  }
  throw ConfigError(path, "unknown algorithm '" + std::string(name) + "' (expected ppm, pocs or ppb)");
}

struct ExperimentConfig {
  DeploymentConfig deployment;
  ErrorModel error_model;
  std::array<SolverConfig, 3> solvers{};  // indexed by Algorithm
  std::vector<Algorithm> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
  std::size_t n_realizations = 100;  // N
  std::uint64_t seed = 1;            // master seed
  std::string output_dir = "out";
  std::size_t threads = 0;           // 0 = hardware concurrency

  SolverConfig& solver(Algorithm a) { return solvers[static_cast<std::size_t>(a)]; }
  const SolverConfig& solver(Algorithm a) const { return solvers[static_cast<std::size_t>(a)]; }

  void validate() const {
    if (n_realizations < 1) throw ConfigError("experiment.n_realizations", "must be >= 1");
    if (algorithms.empty()) throw ConfigError("experiment.algorithms", "must not be empty");
    const auto wrap = [](const char* field, auto&& fn) {
      try {
        fn();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(field, e.what());
      }
    };
    wrap("deployment", [&] { deployment.validate(); });
    wrap("error_model", [&] { error_model.validate(); });
    for (auto a : kAllAlgorithms) {
      wrap(("solvers." + std::string(algorithm_name(a))).c_str(), [&] { solver(a).validate(); });
    }
  }
};

namespace detail {

inline void reject_unknown_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> known) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || k == key;
    if (!ok) throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
  }
}

inline bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
  return j.get<bool>();
}

inline std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

inline std::string_view initializer_name(Initializer i) {
  switch (i) {
    case Initializer::kRandomUniform: return "random-uniform";
    case Initializer::kAnchorCentroid: return "anchor-centroid";
    case Initializer::kExplicit: return "explicit";
  }
  return "?";
}

inline void apply_solver_section(const json& j, const std::string& path, SolverConfig& cfg) {
  reject_unknown_keys(j, path, {"max_iterations", "stop_tol", "initializer", "diagnostics", "record_node_updates"});
  if (j.contains("max_iterations")) cfg.max_iterations = as_count(j["max_iterations"], path + ".max_iterations");
  if (j.contains("stop_tol")) cfg.stop_tol = as_number(j["stop_tol"], path + ".stop_tol");
  if (j.contains("initializer")) {
    const std::string name = as_string(j["initializer"], path + ".initializer");
    if (name == "random-uniform") {
      cfg.initializer = Initializer::kRandomUniform;
    } else if (name == "anchor-centroid") {
      cfg.initializer = Initializer::kAnchorCentroid;
    } else {
      throw ConfigError(path + ".initializer", "expected random-uniform or anchor-centroid");
    }
  }
  if (j.contains("diagnostics")) cfg.diagnostics = as_bool(j["diagnostics"], path + ".diagnostics");
  if (j.contains("record_node_updates")) {
    cfg.record_node_updates = as_bool(j["record_node_updates"], path + ".record_node_updates");
  }
}

inline json solver_to_json(const SolverConfig& c) {
  return {{"max_iterations", c.max_iterations},
          {"stop_tol", c.stop_tol},
          {"initializer", initializer_name(c.initializer)},
          {"diagnostics", c.diagnostics},
          {"record_node_updates", c.record_node_updates}};
}

inline std::vector<Point> points_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of points");
  std::vector<Point> pts;
  for (std::size_t k = 0; k < j.size(); ++k) pts.push_back(point_from_json(j[k], path + "[" + std::to_string(k) + "]"));
  return pts;
}

}  // namespace detail

inline ExperimentConfig experiment_config_from_json(const json& j) {
  using namespace detail;
  ExperimentConfig cfg;
  reject_unknown_keys(j, "", {"format", "deployment", "error_model", "solver", "solvers", "experiment"});
  if (j.contains("format") && j["format"] != kConfigFormat) {
    throw ConfigError("format", "unsupported config format (expected " + std::string(kConfigFormat) + ")");
  }

  if (j.contains("deployment")) {
    const json& d = j["deployment"];
    reject_unknown_keys(d, "deployment",
                        {"dimension", "field_size", "n_targets", "references", "comm_range", "target_positions"});
    auto& dep = cfg.deployment;
    if (d.contains("dimension")) dep.dimension = as_count(d["dimension"], "deployment.dimension");
    if (d.contains("field_size")) dep.field_size = as_number(d["field_size"], "deployment.field_size");
    if (d.contains("n_targets")) dep.n_targets = as_count(d["n_targets"], "deployment.n_targets");
    if (d.contains("comm_range")) dep.comm_range = as_number(d["comm_range"], "deployment.comm_range");
    if (d.contains("references")) {
      const json& r = d["references"];
      if (r.is_number_unsigned()) {
        try {
          dep.references = default_reference_layout(r.get<std::size_t>(), dep.field_size);
        } catch (const std::invalid_argument& e) {
          throw ConfigError("deployment.references", e.what());
        }
      } else {
        dep.references = points_from_json(r, "deployment.references");
      }
    } else {
      dep.references = default_reference_layout(4, dep.field_size);
    }
    if (d.contains("target_positions")) {
      dep.target_positions = points_from_json(d["target_positions"], "deployment.target_positions");
      dep.n_targets = dep.target_positions->size();
    }
  }

  if (j.contains("error_model")) {
    const json& e = j["error_model"];
    reject_unknown_keys(e, "error_model", {"mode", "sigma", "p_nlos", "nlos_max"});
    auto& err = cfg.error_model;
    if (e.contains("mode")) {
      const std::string mode = as_string(e["mode"], "error_model.mode");
      if (mode == "los") {
        err.mode = NoiseMode::kLos;
      } else if (mode == "nlos") {
        err.mode = NoiseMode::kMixedNlos;
      } else {
        throw ConfigError("error_model.mode", "expected los or nlos");
      }
    }
    if (e.contains("sigma")) err.sigma = as_number(e["sigma"], "error_model.sigma");
    if (e.contains("p_nlos")) err.p_nlos = as_number(e["p_nlos"], "error_model.p_nlos");
    if (e.contains("nlos_max")) err.nlos_max = as_number(e["nlos_max"], "error_model.nlos_max");
  }

  if (j.contains("solver")) {
    for (auto a : kAllAlgorithms) apply_solver_section(j["solver"], "solver", cfg.solver(a));
  }
  if (j.contains("solvers")) {
    const json& s = j["solvers"];
    reject_unknown_keys(s, "solvers", {"ppm", "pocs", "ppb"});
    for (auto a : kAllAlgorithms) {
      const std::string name(algorithm_name(a));
      if (s.contains(name)) apply_solver_section(s[name], "solvers." + name, cfg.solver(a));
    }
  }

  if (j.contains("experiment")) {
    const json& x = j["experiment"];
    reject_unknown_keys(x, "experiment", {"algorithms", "n_realizations", "seed", "output_dir", "threads"});
    if (x.contains("algorithms")) {
      const json& list = x["algorithms"];
      if (!list.is_array()) throw ConfigError("experiment.algorithms", "expected an array of names");
      cfg.algorithms.clear();
      std::set<Algorithm> seen;
      for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string path = "experiment.algorithms[" + std::to_string(k) + "]";
        const Algorithm a = parse_algorithm(as_string(list[k], path), path);
        if (seen.insert(a).second) cfg.algorithms.push_back(a);
      }
    }
    if (x.contains("n_realizations")) cfg.n_realizations = as_count(x["n_realizations"], "experiment.n_realizations");
    if (x.contains("seed")) {
      if (!x["seed"].is_number_unsigned()) throw ConfigError("experiment.seed", "expected a non-negative integer");
      cfg.seed = x["seed"].get<std::uint64_t>();
    }
    if (x.contains("output_dir")) cfg.output_dir = as_string(x["output_dir"], "experiment.output_dir");
    if (x.contains("threads")) cfg.threads = as_count(x["threads"], "experiment.threads");
  }

  cfg.validate();
  return cfg;
}

/// Normalized form with every field spelled out; parses back to the same
/// configuration.
inline json experiment_config_to_json(const ExperimentConfig& cfg) {
  using namespace detail;
  json refs = json::array();
  for (const auto& r : cfg.deployment.references) refs.push_back(point_to_json(r));
  json dep = {{"dimension", cfg.deployment.dimension},
              {"field_size", cfg.deployment.field_size},
              {"n_targets", cfg.deployment.n_targets},
              {"references", refs},
              {"comm_range", cfg.deployment.comm_range}};
  if (cfg.deployment.target_positions) {
    json tp = json::array();
    for (const auto& p : *cfg.deployment.target_positions) tp.push_back(point_to_json(p));
    dep["target_positions"] = tp;
  }
  json err = {{"mode", cfg.error_model.mode == NoiseMode::kLos ? "los" : "nlos"},
              {"sigma", cfg.error_model.sigma},
              {"p_nlos", cfg.error_model.p_nlos},
              {"nlos_max", cfg.error_model.nlos_max}};
  json solvers = json::object();
  for (auto a : kAllAlgorithms) solvers[std::string(algorithm_name(a))] = solver_to_json(cfg.solver(a));
  json algs = json::array();
  for (auto a : cfg.algorithms) algs.push_back(algorithm_name(a));
  return {{"format", kConfigFormat},
          {"deployment", dep},
          {"error_model", err},
          {"solvers", solvers},
          {"experiment",
           {{"algorithms", algs},
            {"n_realizations", cfg.n_realizations},
            {"seed", cfg.seed},
            {"output_dir", cfg.output_dir},
            {"threads", cfg.threads}}}};
}

inline ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return experiment_config_from_json(read_json_file(path));
}

}  // namespace coopnet
