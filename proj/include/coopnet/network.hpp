#pragma once

// Node placement, connectivity and synthetic range measurements.
//
// Indexing: targets are 0-based indices 0..n-1 and references 0..m-1 in
// memory. Documents and user-facing output use the node ids of the model,
// targets 1..n and references n+1..n+m (see target_id / reference_id).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coopnet/errors.hpp"
#include "coopnet/geometry.hpp"
#include "coopnet/rng.hpp"

namespace coopnet {

struct Link {
  std::size_t node;  // reference index for anchor links, target index otherwise
  double range;      // measured distance, clamped to >= 0
};

struct Scenario {
  std::size_t dimension = 2;
  double field_size = 100.0;  // side of the deployment square/cube
  std::vector<Point> references;
  std::vector<Point> targets_true;
  std::vector<std::vector<Link>> anchor_links;  // A_i per target
  std::vector<std::vector<Link>> target_links;  // B_i per target

  std::size_t n_targets() const noexcept { return targets_true.size(); }
  std::size_t n_references() const noexcept { return references.size(); }
  std::size_t degree(std::size_t i) const { return anchor_links.at(i).size() + target_links.at(i).size(); }

  std::size_t target_id(std::size_t i) const noexcept { return i + 1; }
  std::size_t reference_id(std::size_t j) const noexcept { return n_targets() + j + 1; }

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
};

enum class NoiseMode { kLos, kMixedNlos };

struct ErrorModel {
  NoiseMode mode = NoiseMode::kLos;
  double sigma = 1.0;      // Gaussian std-dev (m)
  double p_nlos = 0.2;     // Bernoulli probability of an NLOS bias
  double nlos_max = 20.0;  // NLOS bias ~ Uniform[0, nlos_max] (m)

  void validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be >= 0");
    if (!(p_nlos >= 0.0 && p_nlos <= 1.0)) throw std::invalid_argument("p_nlos must lie in [0, 1]");
    if (!(nlos_max >= 0.0) || !std::isfinite(nlos_max)) throw std::invalid_argument("nlos_max must be >= 0");
  }
};

/// a1..a4 at the corners of the field, a5 at its center.
inline std::vector<Point> default_reference_layout(std::size_t count = 5, double field_size = 100.0) {
  const double s = field_size;
  std::vector<Point> all{{0.0, 0.0}, {s, 0.0}, {s, s}, {0.0, s}, {s / 2, s / 2}};
  if (count > all.size()) throw std::invalid_argument("default layout has at most 5 references");
  all.resize(count);
  return all;
}

struct DeploymentConfig {
  std::size_t dimension = 2;
  double field_size = 100.0;
  std::size_t n_targets = 20;
  std::vector<Point> references = default_reference_layout(4);
  double comm_range = 40.0;
  // Forced placement: when set, targets sit exactly here and n_targets is
  // ignored.
  std::optional<std::vector<Point>> target_positions;

  void validate() const;
};

inline constexpr int kMaxRegenerationAttempts = 1000;

/// true_dist plus one draw of the configured error. May be negative.
/// Always consumes the same number of variates for a given mode.
inline double measure_range(double true_dist, const ErrorModel& err, Rng& rng) {
  double value = true_dist + err.sigma * rng.normal();
  if (err.mode == NoiseMode::kMixedNlos) {
    const bool nlos = rng.bernoulli(err.p_nlos);
    const double bias = rng.uniform(0.0, err.nlos_max);
    if (nlos) value += bias;
  }
  return value;
}

namespace detail {

inline double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Counter-clockwise hull by monotone chain; empty if the points do not span
// a polygon.
inline std::vector<Point> convex_hull_2d(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  if (pts.size() < 3) return {};
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) return {};
  return hull;
}

inline bool inside_convex_polygon(const std::vector<Point>& ccw, const Point& p) {
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    if (cross(ccw[i], ccw[(i + 1) % ccw.size()], p) < 0) return false;
  }
  return true;
}

}  // namespace detail

inline void DeploymentConfig::validate() const {
  if (dimension != 2 && dimension != 3) throw std::invalid_argument("dimension must be 2 or 3");
  if (!(field_size > 0.0)) throw std::invalid_argument("field_size must be > 0");
  if (!(comm_range > 0.0)) throw std::invalid_argument("comm_range must be > 0");
  if (references.empty()) throw std::invalid_argument("at least one reference is required");
  for (const auto& r : references) {
    if (r.dim() != dimension) throw DimensionMismatch(r.dim(), dimension);
  }
  if (target_positions) {
    for (const auto& t : *target_positions) {
      if (t.dim() != dimension) throw DimensionMismatch(t.dim(), dimension);
    }
  }
}

inline void Scenario::validate() const {
  const std::size_t n = n_targets();
  if (dimension != 2 && dimension != 3) throw std::invalid_argument("dimension must be 2 or 3");
  if (anchor_links.size() != n || target_links.size() != n) {
    throw std::invalid_argument("link lists must have one entry per target");
  }
  for (const auto& p : references) {
    if (p.dim() != dimension) throw DimensionMismatch(p.dim(), dimension);
  }
  for (const auto& p : targets_true) {
    if (p.dim() != dimension) throw DimensionMismatch(p.dim(), dimension);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& l : anchor_links[i]) {
      if (l.node >= references.size()) throw std::invalid_argument("anchor link to unknown reference");
      if (!(l.range >= 0.0) || !std::isfinite(l.range)) throw std::invalid_argument("ranges must be finite and >= 0");
    }
    for (const auto& l : target_links[i]) {
      if (l.node >= n) throw std::invalid_argument("target link to unknown target");
      if (l.node == i) throw std::invalid_argument("target linked to itself");
      if (!(l.range >= 0.0) || !std::isfinite(l.range)) throw std::invalid_argument("ranges must be finite and >= 0");
      bool mirrored = false;
      for (const auto& back : target_links[l.node]) {
        if (back.node == i) {
          if (back.range != l.range) throw std::invalid_argument("asymmetric target range");
          mirrored = true;
        }
      }
      if (!mirrored) throw std::invalid_argument("target link without its mirror");
    }
  }
}

namespace detail {

inline std::vector<Point> draw_targets(const DeploymentConfig& cfg, Rng& rng) {
  std::vector<Point> out;
  out.reserve(cfg.n_targets);
  const auto hull = cfg.dimension == 2 ? convex_hull_2d(cfg.references) : std::vector<Point>{};
  while (out.size() < cfg.n_targets) {
    Point p = Point::zero(cfg.dimension);
    for (std::size_t k = 0; k < cfg.dimension; ++k) p[k] = rng.uniform(0.0, cfg.field_size);
    if (hull.empty() || inside_convex_polygon(hull, p)) out.push_back(p);
  }
  return out;
}

}  // namespace detail

/// Builds links between every pair within comm_range and synthesises one
/// range per unordered pair. Random draws happen in a fixed order: target
/// positions, then anchor links target-major, then target pairs (i < q).
/// Redraws everything until no target is isolated.
inline Scenario generate_scenario(const DeploymentConfig& cfg, const ErrorModel& err, Rng& rng) {
  cfg.validate();
  err.validate();
  for (int attempt = 0; attempt < kMaxRegenerationAttempts; ++attempt) {
    Scenario s;
    s.dimension = cfg.dimension;
    s.field_size = cfg.field_size;
    s.references = cfg.references;
    s.targets_true = cfg.target_positions ? *cfg.target_positions : detail::draw_targets(cfg, rng);
    const std::size_t n = s.n_targets();
    s.anchor_links.assign(n, {});
    s.target_links.assign(n, {});

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < s.references.size(); ++j) {
        const double d = distance(s.targets_true[i], s.references[j]);
        if (d <= cfg.comm_range) {
          s.anchor_links[i].push_back({j, std::max(measure_range(d, err, rng), 0.0)});
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t q = i + 1; q < n; ++q) {
        const double d = distance(s.targets_true[i], s.targets_true[q]);
        if (d <= cfg.comm_range) {
          const double r = std::max(measure_range(d, err, rng), 0.0);
          s.target_links[i].push_back({q, r});
          s.target_links[q].push_back({i, r});
        }
      }
    }

    bool isolated = false;
    for (std::size_t i = 0; i < n && !isolated; ++i) isolated = s.degree(i) == 0;
    if (!isolated) return s;
    if (cfg.target_positions) {
      throw GenerationError("forced target placement leaves an isolated target");
    }
  }
  throw GenerationError("no connected scenario after " + std::to_string(kMaxRegenerationAttempts) +
                        " attempts; comm_range too small?");
}

struct ConnectivityStats {
  std::vector<std::size_t> anchor_degree;  // |A_i|
  std::vector<std::size_t> target_degree;  // |B_i|
  std::size_t isolated = 0;
  std::size_t without_anchor = 0;
};

inline ConnectivityStats connectivity_stats(const Scenario& s) {
  ConnectivityStats st;
  for (std::size_t i = 0; i < s.n_targets(); ++i) {
    st.anchor_degree.push_back(s.anchor_links[i].size());
    st.target_degree.push_back(s.target_links[i].size());
    if (s.degree(i) == 0) ++st.isolated;
    if (s.anchor_links[i].empty()) ++st.without_anchor;
  }
  return st;
}

}  // namespace coopnet
