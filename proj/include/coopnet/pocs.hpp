#pragma once

// Cooperative POCS baseline. Node i runs 5 D_i sequential relaxed projections
// cycling over its D_i balls (anchors first, then neighbours, in link order).
// The first 3 D_i use relaxation 1; from projection t = 3 D_i on (0-based
// counter) the relaxation decays harmonically, 1 / (t - 3 D_i + 1).

#include <cstddef>
#include <vector>

#include "coopnet/geometry.hpp"
#include "coopnet/network.hpp"
#include "coopnet/objective.hpp"
#include "coopnet/solver.hpp"

namespace coopnet {

inline constexpr std::size_t kPocsLocalCycles = 5;
inline constexpr std::size_t kPocsUnitRelaxationCycles = 3;

inline double pocs_relaxation(std::size_t t, std::size_t degree) {
  const std::size_t unit = kPocsUnitRelaxationCycles * degree;
  if (t < unit) return 1.0;
  return 1.0 / static_cast<double>(t - unit + 1);
}

inline Point pocs_update_node(const EstimateStack& x, const Scenario& s, std::size_t i) {
  detail::require_stack_matches(x, s);
  detail::require_target(s, i);
  const std::size_t degree = s.degree(i);
  if (degree == 0) throw DegenerateNode(s.target_id(i));

  std::vector<Ball> balls;
  balls.reserve(degree);
  for (const auto& l : s.anchor_links[i]) balls.push_back(anchor_ball(s, l));
  for (const auto& l : s.target_links[i]) balls.push_back(neighbour_ball(x, l));

  Point z = x[i];
  for (std::size_t t = 0; t < kPocsLocalCycles * degree; ++t) {
    const double lambda = pocs_relaxation(t, degree);
    z += lambda * (project_ball(z, balls[t % degree]) - z);
  }
  return z;
}

inline SolveResult solve_pocs(const Scenario& s, const SolverConfig& cfg, EstimateStack x0) {
  return detail::run_sweeps(
      s, cfg, std::move(x0),
      [&s](const EstimateStack& x, std::size_t i) { return pocs_update_node(x, s, i); },
      /*assert_monotone=*/false);
}

inline SolveResult solve_pocs(const Scenario& s, const SolverConfig& cfg, Rng& rng) {
  return solve_pocs(s, cfg, initial_estimate(s, cfg, rng));
}

}  // namespace coopnet
