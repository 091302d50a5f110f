#pragma once

// Self-check suite behind `coopnet check`: runs the solver invariants on
// random instances and reports one line per property.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "coopnet/analysis.hpp"
#include "coopnet/geometry.hpp"
#include "coopnet/network.hpp"
#include "coopnet/objective.hpp"
#include "coopnet/ppm.hpp"
#include "coopnet/rng.hpp"

namespace coopnet {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline Scenario random_check_scenario(Rng& rng, NoiseMode mode) {
  DeploymentConfig dep;
  dep.n_targets = 10 + static_cast<std::size_t>(rng.uniform() * 21.0);
  ErrorModel err;
  err.mode = mode;
  return generate_scenario(dep, err, rng);
}

inline EstimateStack random_stack(const Scenario& s, Rng& rng) {
  EstimateStack x;
  for (std::size_t i = 0; i < s.n_targets(); ++i) {
    Point p = Point::zero(s.dimension);
    for (std::size_t c = 0; c < s.dimension; ++c) p[c] = rng.uniform(0.0, s.field_size);
    x.push_back(p);
  }
  return x;
}

inline Point random_point(Rng& rng, double lo, double hi) { return {rng.uniform(lo, hi), rng.uniform(lo, hi)}; }

inline std::string fmt(double v) {
  std::ostringstream o;
  o.precision(3);
  o << v;
  return o.str();
}

}  // namespace detail

inline CheckResult check_projections(std::uint64_t seed, std::size_t trials = 100000) {
  Rng rng(seed);
  std::size_t violations = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const Ball b(detail::random_point(rng, -50, 50), rng.uniform(0.0, 30.0));
    const Point p = detail::random_point(rng, -100, 100);
    const Point q = detail::random_point(rng, -100, 100);
    const Point pp = project_ball(p, b);
    const Point pq = project_ball(q, b);
    if (distance(pp, pq) > distance(p, q) + 1e-12) ++violations;
    if (distance(project_ball(pp, b), pp) > 1e-12) ++violations;
    if (distance(pp, b.center()) > b.radius() + 1e-12) ++violations;
    if (std::abs(distance_to_ball(p, b) - distance(p, pp)) > 1e-12) ++violations;
  }
  return {"projection nonexpansive/idempotent/member", violations == 0,
          std::to_string(violations) + " violations in " + std::to_string(trials) + " trials"};
}

inline CheckResult check_objective_forms(std::uint64_t seed, std::size_t trials = 200) {
  Rng rng(seed);
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const Scenario s = detail::random_check_scenario(rng, t % 2 ? NoiseMode::kMixedNlos : NoiseMode::kLos);
    const EstimateStack x = detail::random_stack(s, rng);
    const double a = objective_f(x, s);
    const double b = objective_f_projection_form(x, s);
    worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
  }
  return {"objective max-form == projection-form", worst <= 1e-10, "max rel diff " + detail::fmt(worst)};
}

inline CheckResult check_update_gradient_identity(std::uint64_t seed, std::size_t trials = 2000) {
  Rng rng(seed);
  double worst = 0.0;
  Scenario s;
  for (std::size_t t = 0; t < trials; ++t) {
    if (t % 50 == 0) s = detail::random_check_scenario(rng, NoiseMode::kMixedNlos);
    const EstimateStack x = detail::random_stack(s, rng);
    const auto i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(s.n_targets()));
    const Point step = ppm_update_node(x, s, i) - x[i];
    const Point expected = (-1.0 / block_lipschitz(s, i)) * block_gradient(x, s, i);
    worst = std::max(worst, distance(step, expected));
  }
  return {"PPM update == block gradient step 1/L_i", worst <= 1e-10, "max deviation " + detail::fmt(worst)};
}

inline CheckResult check_gradient_fd(std::uint64_t seed, std::size_t trials = 300) {
  Rng rng(seed);
  double worst = 0.0;
  std::size_t done = 0;
  while (done < trials) {
    const Scenario s = detail::random_check_scenario(rng, NoiseMode::kLos);
    EstimateStack x = s.targets_true;
    for (auto& p : x) p += Point(rng.normal(0, 5), rng.normal(0, 5));
    const auto i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(s.n_targets()));
    bool near_boundary = false;
    for (const auto& l : s.anchor_links[i]) near_boundary |= std::abs(distance(x[i], s.references[l.node]) - l.range) < 1e-3;
    for (const auto& l : s.target_links[i]) near_boundary |= std::abs(distance(x[i], x[l.node]) - l.range) < 1e-3;
    if (near_boundary) continue;
    const Point g = block_gradient(x, s, i);
    for (std::size_t c = 0; c < s.dimension; ++c) {
      const double h = 1e-6;
      EstimateStack xp = x, xm = x;
      xp[i][c] += h;
      xm[i][c] -= h;
      const double fd = (objective_f(xp, s) - objective_f(xm, s)) / (2 * h);
      worst = std::max(worst, std::abs(fd - g[c]));
    }
    ++done;
  }
  return {"block gradient == central differences", worst <= 1e-5, "max abs diff " + detail::fmt(worst)};
}

inline CheckResult check_ppm_descent(std::uint64_t seed, std::size_t runs = 40) {
  Rng rng(seed);
  std::size_t monotone_violations = 0;
  std::size_t bound_violations = 0;
  for (std::size_t r = 0; r < runs; ++r) {
    const Scenario s = detail::random_check_scenario(rng, r % 2 ? NoiseMode::kMixedNlos : NoiseMode::kLos);
    SolverConfig cfg;
    cfg.stop_tol = 0.0;
    cfg.max_iterations = 100;
    const auto res = solve_ppm(s, cfg, detail::random_stack(s, rng));
    double f_prev = res.trace.f_initial;
    for (const auto& it : res.trace.iterations) {
      if (it.f > f_prev + 1e-12 * std::max(1.0, f_prev)) ++monotone_violations;
      double sumsq = 0.0;
      for (double g : it.block_grad_norms) sumsq += g * g;
      if (f_prev - it.f < sumsq / (2.0 * res.trace.tau) - 1e-9) ++bound_violations;
      f_prev = it.f;
    }
  }
  return {"PPM monotone descent and sufficient-decrease bound", monotone_violations + bound_violations == 0,
          std::to_string(monotone_violations) + " monotone / " + std::to_string(bound_violations) +
              " bound violations over " + std::to_string(runs) + " runs"};
}

inline CheckResult check_consistent_recovery(std::uint64_t seed, std::size_t inits = 50) {
  Rng rng(seed);
  Scenario s;
  s.references = {{0.0, 0.0}, {100.0, 0.0}, {0.0, 100.0}};
  s.targets_true = {{30.0, 40.0}};
  s.anchor_links = {{}};
  s.target_links = {{}};
  for (std::size_t j = 0; j < 3; ++j) s.anchor_links[0].push_back({j, distance(s.targets_true[0], s.references[j])});
  double worst = 0.0;
  for (std::size_t t = 0; t < inits; ++t) {
    const auto res = solve_ppm(s, SolverConfig{}, rng);
    worst = std::max(worst, distance(res.estimate[0], s.targets_true[0]));
  }
  return {"noiseless 3-anchor target recovered", worst < 0.1, "max error " + detail::fmt(worst) + " m"};
}

inline CheckResult check_scenario_symmetry(std::uint64_t seed, std::size_t scenarios = 200) {
  Rng rng(seed);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < scenarios; ++t) {
    const Scenario s = detail::random_check_scenario(rng, NoiseMode::kMixedNlos);
    try {
      s.validate();
    } catch (const std::exception&) {
      ++bad;
    }
  }
  return {"generated scenarios symmetric and valid", bad == 0, std::to_string(bad) + " invalid of " + std::to_string(scenarios)};
}

inline CheckResult check_nlos_mean(std::uint64_t seed, std::size_t draws = 1000000) {
  Rng rng(seed);
  ErrorModel err{NoiseMode::kMixedNlos, 1.0, 0.2, 20.0};
  double sum = 0.0;
  for (std::size_t k = 0; k < draws; ++k) sum += measure_range(10.0, err, rng) - 10.0;
  const double mean = sum / static_cast<double>(draws);
  return {"NLOS error mean == p*L/2", std::abs(mean - 2.0) <= 0.02, "mean " + detail::fmt(mean) + " m"};
}

inline std::vector<CheckResult> run_checks(std::uint64_t seed) {
  return {check_projections(derive_seed(seed, 0, "check")),
          check_objective_forms(derive_seed(seed, 1, "check")),
          check_update_gradient_identity(derive_seed(seed, 2, "check")),
          check_gradient_fd(derive_seed(seed, 3, "check")),
          check_ppm_descent(derive_seed(seed, 4, "check")),
          check_consistent_recovery(derive_seed(seed, 5, "check")),
          check_scenario_symmetry(derive_seed(seed, 6, "check")),
          check_nlos_mean(derive_seed(seed, 7, "check"))};
}

}  // namespace coopnet
