#pragma once

// Monte-Carlo metrics: per-target position errors, their empirical CDF and
// the realization-averaged residual |x^k - x^{k-1}| per iteration.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coopnet/geometry.hpp"
#include "coopnet/network.hpp"
#include "coopnet/solver.hpp"

namespace coopnet {

struct RunRecord {
  std::size_t realization = 0;  // m, 1-based
  std::uint64_t scenario_seed = 0;
  std::string algorithm;
  EstimateStack estimate;      // x^K
  std::vector<double> errors;  // E_{i,m} = |x^K_i - x_i|
  IterationTrace trace;
  bool failed = false;  // numerical failure; excluded from metrics
  std::string failure;
};

inline std::vector<double> target_errors(const EstimateStack& estimate, const Scenario& s) {
  detail::require_stack_matches(estimate, s);
  std::vector<double> e;
  e.reserve(estimate.size());
  for (std::size_t i = 0; i < estimate.size(); ++i) e.push_back(distance(estimate[i], s.targets_true[i]));
  return e;
}

inline RunRecord make_run_record(std::size_t realization, std::uint64_t scenario_seed, std::string algorithm,
                                 const Scenario& s, SolveResult result) {
  RunRecord r;
  r.realization = realization;
  r.scenario_seed = scenario_seed;
  r.algorithm = std::move(algorithm);
  r.errors = target_errors(result.estimate, s);
  r.estimate = std::move(result.estimate);
  r.trace = std::move(result.trace);
  return r;
}

/// All n*N errors, in record order. Failed records are skipped.
inline std::vector<double> position_errors(std::span<const RunRecord> records) {
  std::vector<double> out;
  const RunRecord* first = nullptr;
  for (const auto& r : records) {
    if (r.failed) continue;
    if (first != nullptr && r.errors.size() != first->errors.size()) {
      throw std::invalid_argument("run records disagree on the number of targets");
    }
    if (first == nullptr) first = &r;
    out.insert(out.end(), r.errors.begin(), r.errors.end());
  }
  return out;
}

struct CdfCurve {
  std::vector<double> alpha;
  std::vector<double> cdf;
};

/// CDF(alpha) = |{e : e <= alpha}| / |errors| at each grid point.
inline CdfCurve empirical_cdf(std::span<const double> errors, std::span<const double> grid) {
  if (errors.empty()) throw std::invalid_argument("empirical CDF of an empty sample");
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("CDF grid must be sorted");
  std::vector<double> sorted(errors.begin(), errors.end());
  std::sort(sorted.begin(), sorted.end());
  CdfCurve c;
  c.alpha.assign(grid.begin(), grid.end());
  c.cdf.reserve(grid.size());
  const double total = static_cast<double>(sorted.size());
  for (double a : grid) {
    const auto count = std::upper_bound(sorted.begin(), sorted.end(), a) - sorted.begin();
    c.cdf.push_back(static_cast<double>(count) / total);
  }
  return c;
}

/// Exact step function: one point per distinct sorted sample.
inline CdfCurve step_cdf(std::span<const double> errors) {
  if (errors.empty()) throw std::invalid_argument("empirical CDF of an empty sample");
  std::vector<double> sorted(errors.begin(), errors.end());
  std::sort(sorted.begin(), sorted.end());
  CdfCurve c;
  const double total = static_cast<double>(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (k + 1 < sorted.size() && sorted[k + 1] == sorted[k]) continue;
    c.alpha.push_back(sorted[k]);
    c.cdf.push_back(static_cast<double>(k + 1) / total);
  }
  return c;
}

/// Nearest-rank quantile, q in (0, 1].
inline double quantile(std::span<const double> sample, double q) {
  if (sample.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

inline double median(std::span<const double> sample) {
  if (sample.empty()) throw std::invalid_argument("median of an empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

inline constexpr std::size_t kDefaultCdfPoints = 200;
inline constexpr double kDefaultCdfQuantile = 0.999;

/// Evenly spaced grid from 0 to the 99.9th percentile of the sample. Falls
/// back to [0, 1] when that percentile is zero.
inline std::vector<double> default_cdf_grid(std::span<const double> errors,
                                            std::size_t points = kDefaultCdfPoints,
                                            double q = kDefaultCdfQuantile) {
  if (points < 2) throw std::invalid_argument("CDF grid needs at least two points");
  double top = quantile(errors, q);
  if (!(top > 0.0)) top = 1.0;
  std::vector<double> grid(points);
  for (std::size_t k = 0; k < points; ++k) {
    grid[k] = top * static_cast<double>(k) / static_cast<double>(points - 1);
  }
  return grid;
}

struct ResidualCurve {
  std::vector<double> mean_residual;  // r_k for k = 1..K, index k-1
};

/// r_k = 1/(nN) sum_m |x^k_m - x^{k-1}_m| for k = 1..iterations.
/// Traces that stopped early count as residual 0 afterwards. iterations = 0
/// means the length of the longest trace.
inline ResidualCurve average_residual(std::span<const IterationTrace> traces, std::size_t n,
                                      std::size_t iterations = 0) {
  ResidualCurve c;
  std::size_t k_max = iterations;
  for (const auto& t : traces) {
    if (t.n_targets != n) {
      throw std::invalid_argument("trace has " + std::to_string(t.n_targets) + " targets, expected " +
                                  std::to_string(n));
    }
    if (iterations == 0) k_max = std::max(k_max, t.size());
  }
  c.mean_residual.assign(k_max, 0.0);
  if (traces.empty() || n == 0) return c;
  for (std::size_t k = 0; k < k_max; ++k) {
    double sum = 0.0;
    for (const auto& t : traces) {
      if (k < t.size()) sum += t.iterations[k].residual;
    }
    c.mean_residual[k] = sum / static_cast<double>(n * traces.size());
  }
  return c;
}

}  // namespace coopnet
