#pragma once

// Points, closed Euclidean balls and the orthogonal projections every
// solver is built from. Everything here is a pure function on values.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>

#include "coopnet/errors.hpp"

namespace coopnet {

inline constexpr std::size_t kMaxDimension = 3;

/// A position in R^2 or R^3 (meters).
class Point {
 public:
  Point() = default;
  Point(double x, double y) : c_{x, y, 0.0}, dim_(2) { check_finite(); }
  Point(double x, double y, double z) : c_{x, y, z}, dim_(3) { check_finite(); }
  explicit Point(std::span<const double> coords) : dim_(coords.size()) {
    if (dim_ < 2 || dim_ > kMaxDimension) {
      throw std::invalid_argument("point dimension must be 2 or 3");
    }
    std::copy(coords.begin(), coords.end(), c_.begin());
    check_finite();
  }

  static Point zero(std::size_t dim) {
    if (dim < 2 || dim > kMaxDimension) {
      throw std::invalid_argument("point dimension must be 2 or 3");
    }
    Point p;
    p.dim_ = dim;
    return p;
  }

  std::size_t dim() const noexcept { return dim_; }
  double operator[](std::size_t k) const noexcept { return c_[k]; }
  double& operator[](std::size_t k) noexcept { return c_[k]; }
  std::span<const double> coords() const noexcept { return {c_.data(), dim_}; }

  bool is_finite() const noexcept {
    return std::all_of(c_.begin(), c_.begin() + dim_,
                       [](double v) { return std::isfinite(v); });
  }

  Point& operator+=(const Point& o) {
    require_same_dim(o);
    for (std::size_t k = 0; k < dim_; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Point& operator-=(const Point& o) {
    require_same_dim(o);
    for (std::size_t k = 0; k < dim_; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Point& operator*=(double s) noexcept {
    for (std::size_t k = 0; k < dim_; ++k) c_[k] *= s;
    return *this;
  }

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, double s) noexcept { return a *= s; }
  friend Point operator*(double s, Point a) noexcept { return a *= s; }

  friend bool operator==(const Point& a, const Point& b) noexcept {
    if (a.dim_ != b.dim_) return false;
    for (std::size_t k = 0; k < a.dim_; ++k) {
      if (a.c_[k] != b.c_[k]) return false;
    }
    return true;
  }

  void require_same_dim(const Point& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch(dim_, o.dim_);
  }

 private:
  void check_finite() const {
    if (!is_finite()) throw std::invalid_argument("point coordinates must be finite");
  }

  std::array<double, kMaxDimension> c_{};
  std::size_t dim_ = 0;
};

inline double dot(const Point& a, const Point& b) {
  a.require_same_dim(b);
  double s = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) s += a[k] * b[k];
  return s;
}

inline double norm(const Point& p) {
  double s = 0.0;
  for (std::size_t k = 0; k < p.dim(); ++k) s += p[k] * p[k];
  return std::sqrt(s);
}

inline double distance(const Point& a, const Point& b) { return norm(a - b); }

/// Closed ball {z : |z - center| <= radius}. Negative radii are clamped to
/// zero, which leaves the singleton {center}.
class Ball {
 public:
  Ball(Point center, double radius) : center_(center), radius_(std::max(radius, 0.0)) {
    if (!std::isfinite(radius)) throw std::invalid_argument("ball radius must be finite");
    if (center_.dim() == 0) throw std::invalid_argument("ball center has no dimension");
  }

  const Point& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  bool contains(const Point& p) const { return distance(p, center_) <= radius_; }

 private:
  Point center_;
  double radius_;
};

/// Nearest point of the ball to p.
inline Point project_ball(const Point& p, const Ball& b) {
  const Point offset = p - b.center();
  const double dist = norm(offset);
  if (dist <= b.radius()) return p;
  return b.center() + (b.radius() / dist) * offset;
}

/// Projection onto the boundary sphere; interior points are pushed outward.
/// Throws DegenerateProjection when p is the center of a sphere of positive
/// radius. A zero-radius sphere is the point {center}.
inline Point project_sphere(const Point& p, const Ball& b) {
  const Point offset = p - b.center();
  if (b.radius() == 0.0) return b.center();
  const double dist = norm(offset);
  if (dist == 0.0) throw DegenerateProjection("sphere projection of its center");
  return b.center() + (b.radius() / dist) * offset;
}

/// max(|p - center| - radius, 0)
inline double distance_to_ball(const Point& p, const Ball& b) {
  return std::max(distance(p, b.center()) - b.radius(), 0.0);
}

}  // namespace coopnet
