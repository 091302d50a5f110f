#pragma once

// The smooth convex objective whose minimizers solve the implicit
// feasibility problem, its block gradients and block Lipschitz constants.
//
//   f(x) = sum_i sum_{j in A_i} dist(x_i, C_ij)^2
//        + 1/2 sum_i sum_{q in B_i} dist(x_i, X_iq)^2
//
// C_ij is the ball around reference j with the measured anchor range and X_iq
// the ball around the *current* estimate of target q with the measured
// inter-target range. Each unordered target pair shows up twice in the second
// sum, hence the 1/2.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "coopnet/geometry.hpp"
#include "coopnet/network.hpp"

namespace coopnet {

/// Stacked estimate (x_1, ..., x_n), one point per target.
using EstimateStack = std::vector<Point>;

namespace detail {

inline void require_stack_matches(const EstimateStack& x, const Scenario& s) {
  if (x.size() != s.n_targets()) {
    throw std::invalid_argument("estimate stack has " + std::to_string(x.size()) +
                                " points for " + std::to_string(s.n_targets()) + " targets");
  }
  for (const auto& p : x) {
    if (p.dim() != s.dimension) throw DimensionMismatch(p.dim(), s.dimension);
  }
}

inline void require_target(const Scenario& s, std::size_t i) {
  if (i >= s.n_targets()) throw std::out_of_range("target index " + std::to_string(i));
}

inline double sq(double v) { return v * v; }

}  // namespace detail

inline Ball anchor_ball(const Scenario& s, const Link& l) {
  return Ball(s.references[l.node], l.range);
}

inline Ball neighbour_ball(const EstimateStack& x, const Link& l) { return Ball(x[l.node], l.range); }

/// f in its max-form.
inline double objective_f(const EstimateStack& x, const Scenario& s) {
  detail::require_stack_matches(x, s);
  double anchors = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < s.n_targets(); ++i) {
    for (const auto& l : s.anchor_links[i]) {
      anchors += detail::sq(std::max(distance(x[i], s.references[l.node]) - l.range, 0.0));
    }
    for (const auto& l : s.target_links[i]) {
      pairs += detail::sq(std::max(distance(x[i], x[l.node]) - l.range, 0.0));
    }
  }
  return anchors + 0.5 * pairs;
}

/// f written through projections, |x_i - P(x_i)|^2. Mathematically equal to
/// objective_f; kept as an independent evaluation route.
inline double objective_f_projection_form(const EstimateStack& x, const Scenario& s) {
  detail::require_stack_matches(x, s);
  double anchors = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < s.n_targets(); ++i) {
    for (const auto& l : s.anchor_links[i]) {
      const Point r = x[i] - project_ball(x[i], anchor_ball(s, l));
      anchors += dot(r, r);
    }
    for (const auto& l : s.target_links[i]) {
      const Point r = x[i] - project_ball(x[i], neighbour_ball(x, l));
      pairs += dot(r, r);
    }
  }
  return anchors + 0.5 * pairs;
}

/// Partial gradient of f with respect to x_i:
/// sum_j 2(x_i - P_Cij(x_i)) + sum_q 2(x_i - P_Xiq(x_i)).
inline Point block_gradient(const EstimateStack& x, const Scenario& s, std::size_t i) {
  detail::require_stack_matches(x, s);
  detail::require_target(s, i);
  Point g = Point::zero(s.dimension);
  for (const auto& l : s.anchor_links[i]) g += x[i] - project_ball(x[i], anchor_ball(s, l));
  for (const auto& l : s.target_links[i]) g += x[i] - project_ball(x[i], neighbour_ball(x, l));
  return 2.0 * g;
}

/// L_i = 4 (|A_i| + |B_i|).
inline double block_lipschitz(const Scenario& s, std::size_t i) {
  detail::require_target(s, i);
  return 4.0 * static_cast<double>(s.degree(i));
}

/// tau = max_i L_i (0 for an empty network).
inline double max_block_lipschitz(const Scenario& s) {
  double tau = 0.0;
  for (std::size_t i = 0; i < s.n_targets(); ++i) tau = std::max(tau, block_lipschitz(s, i));
  return tau;
}

}  // namespace coopnet
