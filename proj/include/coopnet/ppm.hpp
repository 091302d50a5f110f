#pragma once

// Cooperative parallel projection method. Each node moves to the midpoint
// between its current estimate and the average of its projections onto all
// of its measurement balls. This is exactly a block gradient step
// x_i - grad_i f / L_i with L_i = 4 D_i, so f never increases.

#include <cstddef>

#include "coopnet/geometry.hpp"
#include "coopnet/network.hpp"
#include "coopnet/objective.hpp"
#include "coopnet/solver.hpp"

namespace coopnet {

/// New x_i given the current stack. Targets q < i in x are expected to hold
/// their already-updated estimates.
inline Point ppm_update_node(const EstimateStack& x, const Scenario& s, std::size_t i) {
  detail::require_stack_matches(x, s);
  detail::require_target(s, i);
  const std::size_t degree = s.degree(i);
  if (degree == 0) throw DegenerateNode(s.target_id(i));

  const Point& xi = x[i];
  Point sum = Point::zero(s.dimension);
  for (const auto& l : s.anchor_links[i]) sum += project_ball(xi, anchor_ball(s, l));
  for (const auto& l : s.target_links[i]) sum += project_ball(xi, neighbour_ball(x, l));
  return 0.5 * xi + (0.5 / static_cast<double>(degree)) * sum;
}

/// Runs from an explicit x^0.
inline SolveResult solve_ppm(const Scenario& s, const SolverConfig& cfg, EstimateStack x0) {
  return detail::run_sweeps(
      s, cfg, std::move(x0),
      [&s](const EstimateStack& x, std::size_t i) { return ppm_update_node(x, s, i); },
      /*assert_monotone=*/true);
}

inline SolveResult solve_ppm(const Scenario& s, const SolverConfig& cfg, Rng& rng) {
  return solve_ppm(s, cfg, initial_estimate(s, cfg, rng));
}

}  // namespace coopnet
