#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "errors.hpp"

namespace pskit::geometry {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

double norm2(const Vec2& v);
double norm3(const Vec3& v);
double dot3(const Vec3& a, const Vec3& b);
Vec3 sub3(const Vec3& a, const Vec3& b);
Vec3 scale3(const Vec3& v, double s);

/// A validated set of distinct source locations strictly inside the unit
/// ball/disk (annulus [r_min, r_max] with 0 < r_min < r_max < 1).
class SourceConfig {
public:
  static constexpr double default_r_min = 0.05;
  static constexpr double default_r_max = 0.95;
  static constexpr double default_min_sep = 1e-3;

  // Validation entry points; throw on invariant violations.
  static SourceConfig validate2(std::vector<Vec2> pts, double r_min = default_r_min,
                                double r_max = default_r_max, double min_sep = default_min_sep);
  static SourceConfig validate3(std::vector<Vec3> pts, double r_min = default_r_min,
                                double r_max = default_r_max, double min_sep = default_min_sep);

  int dim() const { return dim_; }
  std::size_t size() const { return pts_.size(); }
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  double min_sep() const { return min_sep_; }

  const Vec3& point(std::size_t k) const { return pts_[k]; }
  Vec2 point2(std::size_t k) const { return {pts_[k][0], pts_[k][1]}; }
  std::complex<double> node(std::size_t k) const { return {pts_[k][0], pts_[k][1]}; }
  std::vector<std::complex<double>> nodes() const;

private:
  SourceConfig(int dim, std::vector<Vec3> pts, double r_min, double r_max, double min_sep)
      : dim_(dim), pts_(std::move(pts)), r_min_(r_min), r_max_(r_max), min_sep_(min_sep) {}

  int dim_;
  std::vector<Vec3> pts_;  // z entry unused when dim_ == 2
  double r_min_, r_max_, min_sep_;
};

/// Deduplicated set of unit 3-vectors; holds at most 2*N_k*(N_k-1) pairwise
/// source directions plus any caller-supplied extras.
class DirectionSet {
public:
  DirectionSet() = default;

  // Inserts +/-d (normalized) unless an equal direction is already present
  // within the angular tolerance.
  void insert_with_negation(const Vec3& d, double ang_tol = 1e-12);
  void insert(const Vec3& unit_dir, double ang_tol = 1e-12);

  std::size_t size() const { return dirs_.size(); }
  const std::vector<Vec3>& directions() const { return dirs_; }

  // Minimum angular distance (radians) from v to any stored direction.
  double min_angle_to(const Vec3& v) const;

private:
  std::vector<Vec3> dirs_;
};

/// All normalized pairwise directions +/-(X_j - X_k)/|X_j - X_k|, deduplicated.
DirectionSet pairwise_directions(const std::vector<Vec3>& points);

struct AxisOptions {
  double angular_clearance = 1e-3;     // delta, radians
  std::size_t sweep_candidates = 100000;  // Fibonacci-sphere grid size
};

/// Deterministic sweep over a Fibonacci-sphere grid for an axis with angular
/// distance >= delta from every pairwise direction and every extra direction.
Vec3 find_preferred_axis(const std::vector<Vec3>& points, const DirectionSet& extra_dirs,
                         const AxisOptions& opt = {});

struct PlaneProjection {
  SourceConfig config2;
  std::vector<Vec2> dipoles2;
};

/// Projects a 3D configuration (and optional dipole vectors) onto the plane
/// orthogonal to `axis`. The axis must satisfy the find_preferred_axis
/// postcondition; projected points are checked for distinctness.
PlaneProjection project_to_plane(const SourceConfig& config3, const Vec3& axis,
                                 const std::vector<Vec3>& dipoles = {});

}  // namespace pskit::geometry
