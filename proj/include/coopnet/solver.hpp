#pragma once

// Shared machinery for the cooperative sweep solvers: configuration,
// iteration traces, initialization and the Gauss-Seidel sweep driver.
//
// One iteration k is one full sweep over targets 1..n in ascending order,
// each node update seeing the already-updated estimates of lower-indexed
// targets. The sweep runs in place on a single stack.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "coopnet/errors.hpp"
#include "coopnet/geometry.hpp"
#include "coopnet/network.hpp"
#include "coopnet/objective.hpp"
#include "coopnet/rng.hpp"

namespace coopnet {

enum class Initializer { kRandomUniform, kAnchorCentroid, kExplicit };

struct SolverConfig {
  std::size_t max_iterations = 300;  // K
  double stop_tol = 1e-6;            // on |x^{k+1} - x^k| (m)
  Initializer initializer = Initializer::kRandomUniform;
  EstimateStack explicit_init;  // used with Initializer::kExplicit
  // Block gradient norms per sweep, plus the monotone-descent assertion for
  // the solvers that guarantee it.
  bool diagnostics = true;
  // Also record f after every single node update, f(x^{k,i}).
  bool record_node_updates = false;

  void validate() const {
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (!(stop_tol >= 0.0)) throw std::invalid_argument("stop_tol must be >= 0");
  }
};

struct IterationRecord {
  std::size_t k = 0;
  double f = 0.0;         // f(x^k)
  double residual = 0.0;  // |x^k - x^{k-1}|
  // |grad_i f(x^{k,i-1})|, gradient taken just before node i moves.
  // Empty when diagnostics are off.
  std::vector<double> block_grad_norms;
  double max_block_grad_norm = 0.0;
  double wall_seconds = 0.0;  // since the solver started; never persisted
};

struct IterationTrace {
  std::size_t n_targets = 0;
  double tau = 0.0;         // max_i L_i
  double f_initial = 0.0;   // f(x^0)
  bool converged = false;   // stopped on stop_tol rather than K
  std::vector<IterationRecord> iterations;
  std::vector<std::vector<double>> node_f;  // optional f(x^{k,i}), i = 1..n

  std::size_t size() const noexcept { return iterations.size(); }
};

struct SolveResult {
  EstimateStack estimate;
  IterationTrace trace;
};

/// x^0 for the convex solvers.
inline EstimateStack initial_estimate(const Scenario& s, const SolverConfig& cfg, Rng& rng) {
  const std::size_t n = s.n_targets();
  EstimateStack x;
  x.reserve(n);
  switch (cfg.initializer) {
    case Initializer::kRandomUniform:
      for (std::size_t i = 0; i < n; ++i) {
        Point p = Point::zero(s.dimension);
        for (std::size_t c = 0; c < s.dimension; ++c) p[c] = rng.uniform(0.0, s.field_size);
        x.push_back(p);
      }
      break;
    case Initializer::kAnchorCentroid:
      for (std::size_t i = 0; i < n; ++i) {
        Point p = Point::zero(s.dimension);
        if (s.anchor_links[i].empty()) {
          for (std::size_t c = 0; c < s.dimension; ++c) p[c] = 0.5 * s.field_size;
        } else {
          for (const auto& l : s.anchor_links[i]) p += s.references[l.node];
          p *= 1.0 / static_cast<double>(s.anchor_links[i].size());
        }
        x.push_back(p);
      }
      break;
    case Initializer::kExplicit:
      x = cfg.explicit_init;
      detail::require_stack_matches(x, s);
      break;
  }
  return x;
}

namespace detail {

inline double stacked_distance(const EstimateStack& a, const EstimateStack& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Point d = a[i] - b[i];
    s += dot(d, d);
  }
  return std::sqrt(s);
}

inline void require_connected(const Scenario& s) {
  for (std::size_t i = 0; i < s.n_targets(); ++i) {
    if (s.degree(i) == 0) throw DegenerateNode(s.target_id(i));
  }
}

// Monotone-descent slack: relative 1e-12, absolute below f = 1.
inline constexpr double kDescentSlack = 1e-12;

template <typename NodeUpdate>
SolveResult run_sweeps(const Scenario& s, const SolverConfig& cfg, EstimateStack x,
                       NodeUpdate&& update, bool assert_monotone) {
  cfg.validate();
  require_stack_matches(x, s);
  require_connected(s);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = s.n_targets();

  SolveResult out;
  IterationTrace& trace = out.trace;
  trace.n_targets = n;
  trace.tau = max_block_lipschitz(s);
  trace.f_initial = objective_f(x, s);
  if (!std::isfinite(trace.f_initial)) throw NumericalFailure("non-finite objective at x^0", 0);

  double f_prev = trace.f_initial;
  EstimateStack prev;
  for (std::size_t k = 1; k <= cfg.max_iterations; ++k) {
    prev = x;
    IterationRecord rec;
    rec.k = k;
    if (cfg.diagnostics) rec.block_grad_norms.resize(n);
    std::vector<double> node_f;

    for (std::size_t i = 0; i < n; ++i) {
      if (cfg.diagnostics) {
        const double g = norm(block_gradient(x, s, i));
        rec.block_grad_norms[i] = g;
        rec.max_block_grad_norm = std::max(rec.max_block_grad_norm, g);
      }
      x[i] = update(x, i);
      if (!x[i].is_finite()) {
        throw NumericalFailure("non-finite estimate for target " + std::to_string(s.target_id(i)), k);
      }
      if (cfg.record_node_updates) node_f.push_back(objective_f(x, s));
    }

    rec.residual = stacked_distance(x, prev);
    rec.f = objective_f(x, s);
    if (!std::isfinite(rec.f) || !std::isfinite(rec.residual)) {
      throw NumericalFailure("non-finite objective", k);
    }
    if (assert_monotone && cfg.diagnostics &&
        rec.f > f_prev + kDescentSlack * std::max(1.0, f_prev)) {
      throw SolverInvariantViolation("objective increased at iteration " + std::to_string(k) + ": " +
                                     std::to_string(f_prev) + " -> " + std::to_string(rec.f));
    }
    f_prev = rec.f;
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    trace.iterations.push_back(std::move(rec));
    if (cfg.record_node_updates) trace.node_f.push_back(std::move(node_f));
    if (trace.iterations.back().residual <= cfg.stop_tol) {
      trace.converged = true;
      break;
    }
  }
  out.estimate = std::move(x);
  return out;
}

}  // namespace detail

}  // namespace coopnet
