#pragma once

// JSON documents (scenarios, run records) and CSV tables. Doubles are always
// written in shortest round-trip form, so a value read back is bit-identical
// to the one written.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "coopnet/analysis.hpp"
#include "coopnet/errors.hpp"
#include "coopnet/geometry.hpp"
#include "coopnet/network.hpp"
#include "coopnet/solver.hpp"

namespace coopnet {

using json = nlohmann::json;

inline constexpr std::string_view kScenarioFormat = "coopnet-scenario/1";
inline constexpr std::string_view kRunRecordFormat = "coopnet-run/1";

/// Shortest decimal that parses back to exactly v.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline const json& require_key(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

inline double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

inline std::size_t as_count(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) throw ConfigError(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline json point_to_json(const Point& p) {
  json a = json::array();
  for (double c : p.coords()) a.push_back(c);
  return a;
}

inline Point point_from_json(const json& j, const std::string& path, std::size_t dim = 0) {
  if (!j.is_array() || j.size() < 2 || j.size() > kMaxDimension) {
    throw ConfigError(path, "expected an array of 2 or 3 numbers");
  }
  std::vector<double> c;
  for (std::size_t k = 0; k < j.size(); ++k) c.push_back(as_number(j[k], path + "[" + std::to_string(k) + "]"));
  if (dim != 0 && c.size() != dim) throw ConfigError(path, "expected " + std::to_string(dim) + " coordinates");
  try {
    return Point(std::span<const double>(c));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace detail

// --- scenario ---------------------------------------------------------------

inline json scenario_to_json(const Scenario& s) {
  json j;
  j["format"] = kScenarioFormat;
  j["dimension"] = s.dimension;
  j["field_size"] = s.field_size;
  json refs = json::array();
  for (std::size_t r = 0; r < s.n_references(); ++r) {
    refs.push_back({{"id", s.reference_id(r)}, {"position", detail::point_to_json(s.references[r])}});
  }
  j["references"] = refs;
  json targets = json::array();
  for (std::size_t i = 0; i < s.n_targets(); ++i) {
    json a = json::array();
    for (const auto& l : s.anchor_links[i]) a.push_back({{"id", s.reference_id(l.node)}, {"range", l.range}});
    json b = json::array();
    for (const auto& l : s.target_links[i]) b.push_back({{"id", s.target_id(l.node)}, {"range", l.range}});
    targets.push_back({{"id", s.target_id(i)},
                       {"position", detail::point_to_json(s.targets_true[i])},
                       {"anchor_links", a},
                       {"target_links", b}});
  }
  j["targets"] = targets;
  return j;
}

/// Accepts the schema written by scenario_to_json. Targets must carry ids
/// 1..n in order and references n+1..n+m in order.
inline Scenario scenario_from_json(const json& j) {
  using detail::require_key;
  if (!j.is_object()) throw ConfigError("scenario", "expected an object");
  if (auto it = j.find("format"); it != j.end() && *it != kScenarioFormat) {
    throw ConfigError("format", "unsupported scenario format");
  }
  Scenario s;
  s.dimension = detail::as_count(require_key(j, "dimension", ""), "dimension");
  if (s.dimension != 2 && s.dimension != 3) throw ConfigError("dimension", "must be 2 or 3");
  s.field_size = detail::as_number(require_key(j, "field_size", ""), "field_size");
  if (!(s.field_size > 0.0)) throw ConfigError("field_size", "must be > 0");

  const json& refs = require_key(j, "references", "");
  const json& targets = require_key(j, "targets", "");
  if (!refs.is_array()) throw ConfigError("references", "expected an array");
  if (!targets.is_array()) throw ConfigError("targets", "expected an array");
  const std::size_t n = targets.size();

  for (std::size_t r = 0; r < refs.size(); ++r) {
    const std::string path = "references[" + std::to_string(r) + "]";
    if (detail::as_count(require_key(refs[r], "id", path), path + ".id") != n + r + 1) {
      throw ConfigError(path + ".id", "expected " + std::to_string(n + r + 1));
    }
    s.references.push_back(detail::point_from_json(require_key(refs[r], "position", path), path + ".position", s.dimension));
  }
  s.anchor_links.resize(n);
  s.target_links.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string path = "targets[" + std::to_string(i) + "]";
    const json& t = targets[i];
    if (detail::as_count(require_key(t, "id", path), path + ".id") != i + 1) {
      throw ConfigError(path + ".id", "expected " + std::to_string(i + 1));
    }
    s.targets_true.push_back(detail::point_from_json(require_key(t, "position", path), path + ".position", s.dimension));
    const auto read_links = [&](const char* key, std::size_t lo, std::size_t hi, std::vector<Link>& out) {
      const std::string lpath = path + "." + key;
      const json& arr = require_key(t, key, path);
      if (!arr.is_array()) throw ConfigError(lpath, "expected an array");
      for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string epath = lpath + "[" + std::to_string(k) + "]";
        const std::size_t id = detail::as_count(require_key(arr[k], "id", epath), epath + ".id");
        if (id < lo || id > hi) throw ConfigError(epath + ".id", "id out of range");
        const double range = detail::as_number(require_key(arr[k], "range", epath), epath + ".range");
        out.push_back({id - lo, range});
      }
    };
    read_links("anchor_links", n + 1, n + refs.size(), s.anchor_links[i]);
    read_links("target_links", 1, n, s.target_links[i]);
  }
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("scenario", e.what());
  }
  return s;
}

// --- run records ------------------------------------------------------------

inline json trace_to_json(const IterationTrace& t) {
  json rows = json::array();
  for (const auto& r : t.iterations) {
    rows.push_back({{"k", r.k}, {"f", r.f}, {"residual", r.residual}, {"max_block_grad_norm", r.max_block_grad_norm}});
  }
  return {{"n_targets", t.n_targets},
          {"tau", t.tau},
          {"f_initial", t.f_initial},
          {"converged", t.converged},
          {"iterations", rows}};
}

inline IterationTrace trace_from_json(const json& j, const std::string& path) {
  using detail::require_key;
  IterationTrace t;
  t.n_targets = detail::as_count(require_key(j, "n_targets", path), path + ".n_targets");
  t.tau = detail::as_number(require_key(j, "tau", path), path + ".tau");
  t.f_initial = detail::as_number(require_key(j, "f_initial", path), path + ".f_initial");
  t.converged = require_key(j, "converged", path).get<bool>();
  const json& rows = require_key(j, "iterations", path);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::string rp = path + ".iterations[" + std::to_string(k) + "]";
    IterationRecord r;
    r.k = detail::as_count(require_key(rows[k], "k", rp), rp + ".k");
    r.f = detail::as_number(require_key(rows[k], "f", rp), rp + ".f");
    r.residual = detail::as_number(require_key(rows[k], "residual", rp), rp + ".residual");
    r.max_block_grad_norm = detail::as_number(require_key(rows[k], "max_block_grad_norm", rp), rp + ".max_block_grad_norm");
    t.iterations.push_back(std::move(r));
  }
  return t;
}

inline json run_record_to_json(const RunRecord& r) {
  json est = json::array();
  for (const auto& p : r.estimate) est.push_back(detail::point_to_json(p));
  json j = {{"format", kRunRecordFormat},
            {"realization", r.realization},
            {"scenario_seed", r.scenario_seed},
            {"algorithm", r.algorithm},
            {"failed", r.failed},
            {"estimate", est},
            {"errors", r.errors},
            {"trace", trace_to_json(r.trace)}};
  if (r.failed) j["failure"] = r.failure;
  return j;
}

inline RunRecord run_record_from_json(const json& j) {
  using detail::require_key;
  RunRecord r;
  r.realization = detail::as_count(require_key(j, "realization", ""), "realization");
  r.scenario_seed = require_key(j, "scenario_seed", "").get<std::uint64_t>();
  r.algorithm = require_key(j, "algorithm", "").get<std::string>();
  r.failed = require_key(j, "failed", "").get<bool>();
  if (r.failed) r.failure = j.value("failure", "");
  const json& est = require_key(j, "estimate", "");
  for (std::size_t i = 0; i < est.size(); ++i) {
    r.estimate.push_back(detail::point_from_json(est[i], "estimate[" + std::to_string(i) + "]"));
  }
  for (const auto& e : require_key(j, "errors", "")) r.errors.push_back(e.get<double>());
  r.trace = trace_from_json(require_key(j, "trace", ""), "trace");
  return r;
}

// --- files ------------------------------------------------------------------

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string(), e.what());
  }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

inline void write_json_file(const std::filesystem::path& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

// --- CSV --------------------------------------------------------------------

/// k,f,residual,max_block_grad_norm
inline void write_trace_csv(std::ostream& out, const IterationTrace& t) {
  out << "k,f,residual,max_block_grad_norm\n";
  for (const auto& r : t.iterations) {
    out << r.k << ',' << format_double(r.f) << ',' << format_double(r.residual) << ','
        << format_double(r.max_block_grad_norm) << '\n';
  }
}

struct NamedColumn {
  std::string name;
  std::vector<double> values;
};

/// First column named key_name holding key values, then one column per entry
/// of columns. All columns must have the key's length.
inline void write_columns_csv(std::ostream& out, std::string_view key_name, std::span<const double> keys,
                              std::span<const NamedColumn> columns) {
  out << key_name;
  for (const auto& c : columns) {
    if (c.values.size() != keys.size()) throw std::invalid_argument("column " + c.name + " has the wrong length");
    out << ',' << c.name;
  }
  out << '\n';
  for (std::size_t r = 0; r < keys.size(); ++r) {
    out << format_double(keys[r]);
    for (const auto& c : columns) out << ',' << format_double(c.values[r]);
    out << '\n';
  }
}

}  // namespace coopnet
