#pragma once

// Cooperative projection-onto-boundary baseline. Same midpoint/averaging
// sweep as PPM, but every projection lands on the sphere |z - c| = r, which
// makes the underlying problem nonconvex and the result initialization
// dependent. Sweeps are therefore not checked for monotone descent.

#include <cstddef>
#include <limits>
#include <optional>

#include "coopnet/geometry.hpp"
#include "coopnet/network.hpp"
#include "coopnet/objective.hpp"
#include "coopnet/solver.hpp"

namespace coopnet {

/// Nearest-reference initialization, by measured range:
///   1. targets with anchors start at their closest connected reference;
///   2. the rest, in ascending id order, start at the closest connected
///      target that is already initialized;
///   3. anything left starts at the field center.
inline EstimateStack ppb_initial_estimate(const Scenario& s) {
  const std::size_t n = s.n_targets();
  std::vector<std::optional<Point>> init(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Link* best = nullptr;
    for (const auto& l : s.anchor_links[i]) {
      if (best == nullptr || l.range < best->range) best = &l;
    }
    if (best != nullptr) init[i] = s.references[best->node];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (init[i]) continue;
    const Link* best = nullptr;
    for (const auto& l : s.target_links[i]) {
      if (init[l.node] && (best == nullptr || l.range < best->range)) best = &l;
    }
    if (best != nullptr) init[i] = *init[best->node];
  }
  EstimateStack x;
  x.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (init[i]) {
      x.push_back(*init[i]);
    } else {
      Point c = Point::zero(s.dimension);
      for (std::size_t k = 0; k < s.dimension; ++k) c[k] = 0.5 * s.field_size;
      x.push_back(c);
    }
  }
  return x;
}

namespace detail {

// A term whose projection direction is undefined contributes x_i itself.
inline Point sphere_term(const Point& xi, const Ball& b) {
  try {
    return project_sphere(xi, b);
  } catch (const DegenerateProjection&) {
    return xi;
  }
}

}  // namespace detail

inline Point ppb_update_node(const EstimateStack& x, const Scenario& s, std::size_t i) {
  detail::require_stack_matches(x, s);
  detail::require_target(s, i);
  const std::size_t degree = s.degree(i);
  if (degree == 0) throw DegenerateNode(s.target_id(i));

  const Point& xi = x[i];
  Point sum = Point::zero(s.dimension);
  for (const auto& l : s.anchor_links[i]) sum += detail::sphere_term(xi, anchor_ball(s, l));
  for (const auto& l : s.target_links[i]) sum += detail::sphere_term(xi, neighbour_ball(x, l));
  return 0.5 * xi + (0.5 / static_cast<double>(degree)) * sum;
}

inline SolveResult solve_ppb(const Scenario& s, const SolverConfig& cfg, EstimateStack x0) {
  return detail::run_sweeps(
      s, cfg, std::move(x0),
      [&s](const EstimateStack& x, std::size_t i) { return ppb_update_node(x, s, i); },
      /*assert_monotone=*/false);
}

/// Uses cfg.explicit_init when the initializer is explicit, the
/// nearest-reference rule otherwise.
inline SolveResult solve_ppb(const Scenario& s, const SolverConfig& cfg) {
  EstimateStack x0 = cfg.initializer == Initializer::kExplicit ? cfg.explicit_init : ppb_initial_estimate(s);
  return solve_ppb(s, cfg, std::move(x0));
}

}  // namespace coopnet
