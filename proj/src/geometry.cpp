#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pskit::geometry {

double norm2(const Vec2& v) { return std::hypot(v[0], v[1]); }
double norm3(const Vec3& v) { return std::hypot(v[0], v[1], v[2]); }
double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 sub3(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 scale3(const Vec3& v, double s) { return {v[0] * s, v[1] * s, v[2] * s}; }

namespace {

Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 normalized(const Vec3& v) {
  double n = norm3(v);
  if (n == 0.0) fail(errc::degenerate_input, "cannot normalize zero vector");
  return scale3(v, 1.0 / n);
}

// Angle between unit vectors. atan2 of the cross/dot pair stays accurate
// near 0 and pi, where acos(dot) loses ~8 digits.
double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(norm3(cross3(a, b)), dot3(a, b));
}

void check_annulus_params(double r_min, double r_max, double min_sep) {
  if (!(0.0 < r_min && r_min < r_max && r_max < 1.0))
    fail(errc::invalid_argument, "annulus bounds must satisfy 0 < r_min < r_max < 1");
  if (!(min_sep > 0.0)) fail(errc::invalid_argument, "min_sep must be positive");
}

void check_radius(double r, std::size_t k, double r_min, double r_max) {
  if (!std::isfinite(r)) fail(errc::non_finite, "non-finite point coordinate");
  if (r < r_min || r > r_max)
    fail(errc::outside_annulus, "point " + std::to_string(k + 1) + " has |X| = " +
                                    std::to_string(r) + " outside [r_min, r_max]");
}

void check_separation(double d, std::size_t j, std::size_t k, double min_sep) {
  if (d < min_sep)
    fail(errc::duplicate_point, "points " + std::to_string(j + 1) + " and " +
                                    std::to_string(k + 1) + " are closer than min_sep");
}

}  // namespace

SourceConfig SourceConfig::validate2(std::vector<Vec2> pts, double r_min, double r_max,
                                     double min_sep) {
  check_annulus_params(r_min, r_max, min_sep);
  if (pts.empty()) fail(errc::empty_input, "configuration has no points");
  std::vector<Vec3> lifted;
  lifted.reserve(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    check_radius(norm2(pts[k]), k, r_min, r_max);
    lifted.push_back({pts[k][0], pts[k][1], 0.0});
  }
  for (std::size_t j = 0; j < lifted.size(); ++j)
    for (std::size_t k = j + 1; k < lifted.size(); ++k)
      check_separation(norm3(sub3(lifted[j], lifted[k])), j, k, min_sep);
  return SourceConfig(2, std::move(lifted), r_min, r_max, min_sep);
}

SourceConfig SourceConfig::validate3(std::vector<Vec3> pts, double r_min, double r_max,
                                     double min_sep) {
  check_annulus_params(r_min, r_max, min_sep);
  if (pts.empty()) fail(errc::empty_input, "configuration has no points");
  for (std::size_t k = 0; k < pts.size(); ++k) check_radius(norm3(pts[k]), k, r_min, r_max);
  for (std::size_t j = 0; j < pts.size(); ++j)
    for (std::size_t k = j + 1; k < pts.size(); ++k)
      check_separation(norm3(sub3(pts[j], pts[k])), j, k, min_sep);
  return SourceConfig(3, std::move(pts), r_min, r_max, min_sep);
}

std::vector<std::complex<double>> SourceConfig::nodes() const {
  std::vector<std::complex<double>> zs;
  zs.reserve(pts_.size());
  for (const auto& p : pts_) zs.emplace_back(p[0], p[1]);
  return zs;
}

void DirectionSet::insert(const Vec3& unit_dir, double ang_tol) {
  for (const auto& d : dirs_)
    if (angle_between(d, unit_dir) <= ang_tol) return;
  dirs_.push_back(unit_dir);
}

void DirectionSet::insert_with_negation(const Vec3& d, double ang_tol) {
  Vec3 u = normalized(d);
  insert(u, ang_tol);
  insert(scale3(u, -1.0), ang_tol);
}

double DirectionSet::min_angle_to(const Vec3& v) const {
  double best = std::numbers::pi;
  for (const auto& d : dirs_) best = std::min(best, angle_between(d, v));
  return best;
}

DirectionSet pairwise_directions(const std::vector<Vec3>& points) {
  if (points.size() < 2) fail(errc::degenerate_input, "need at least 2 points for directions");
  DirectionSet out;
  for (std::size_t j = 0; j < points.size(); ++j)
    for (std::size_t k = j + 1; k < points.size(); ++k) {
      Vec3 d = sub3(points[j], points[k]);
      if (norm3(d) == 0.0) fail(errc::duplicate_point, "coincident points have no direction");
      out.insert_with_negation(d, 1e-9);
    }
  return out;
}

Vec3 find_preferred_axis(const std::vector<Vec3>& points, const DirectionSet& extra_dirs,
                         const AxisOptions& opt) {
  DirectionSet forbidden;
  if (points.size() >= 2) forbidden = pairwise_directions(points);
  for (const auto& d : extra_dirs.directions()) forbidden.insert(d);

  // Fibonacci-sphere sweep; first candidate clearing every forbidden
  // direction by the angular tolerance wins.
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < opt.sweep_candidates; ++i) {
    double zc = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(opt.sweep_candidates);
    double r = std::sqrt(std::max(0.0, 1.0 - zc * zc));
    double phi = golden * static_cast<double>(i);
    Vec3 cand{r * std::cos(phi), r * std::sin(phi), zc};
    if (forbidden.min_angle_to(cand) >= opt.angular_clearance) return cand;
  }
  fail(errc::exhausted_candidates, "no axis clears the forbidden direction set");
}

PlaneProjection project_to_plane(const SourceConfig& config3, const Vec3& axis,
                                 const std::vector<Vec3>& dipoles) {
  if (config3.dim() != 3) fail(errc::invalid_argument, "projection requires a 3D configuration");
  Vec3 a = normalized(axis);

  // In-plane orthonormal frame (u, v) with u x v = a.
  Vec3 t = std::abs(a[0]) <= std::abs(a[1]) && std::abs(a[0]) <= std::abs(a[2])
               ? Vec3{1.0, 0.0, 0.0}
               : (std::abs(a[1]) <= std::abs(a[2]) ? Vec3{0.0, 1.0, 0.0} : Vec3{0.0, 0.0, 1.0});
  Vec3 v = normalized(cross3(a, t));
  Vec3 u = cross3(v, a);

  std::vector<Vec2> pts2;
  pts2.reserve(config3.size());
  double min_r = std::numeric_limits<double>::infinity();
  double max_r = 0.0;
  for (std::size_t k = 0; k < config3.size(); ++k) {
    const Vec3& p = config3.point(k);
    Vec2 q{dot3(p, u), dot3(p, v)};
    double r = norm2(q);
    if (r <= 1e-12)
      fail(errc::projection_collision, "source " + std::to_string(k + 1) + " projects onto the origin");
    min_r = std::min(min_r, r);
    max_r = std::max(max_r, r);
    pts2.push_back(q);
  }
  double min_dist = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < pts2.size(); ++j)
    for (std::size_t k = j + 1; k < pts2.size(); ++k) {
      Vec2 d{pts2[j][0] - pts2[k][0], pts2[j][1] - pts2[k][1]};
      min_dist = std::min(min_dist, norm2(d));
    }
  if (pts2.size() > 1 && min_dist <= 1e-12)
    fail(errc::projection_collision, "projected sources are not distinct; axis violates its precondition");

  std::vector<Vec2> dips2;
  dips2.reserve(dipoles.size());
  for (std::size_t k = 0; k < dipoles.size(); ++k) {
    const Vec3& d = dipoles[k];
    Vec2 q{dot3(d, u), dot3(d, v)};
    if (norm3(d) > 0.0 && norm2(q) <= 1e-12 * norm3(d))
      fail(errc::zero_projection, "dipole " + std::to_string(k + 1) + " projects to zero");
    dips2.push_back(q);
  }

  double sep = pts2.size() > 1 ? std::min(min_dist, SourceConfig::default_min_sep) : min_r;
  SourceConfig c2 = SourceConfig::validate2(std::move(pts2), min_r * (1.0 - 1e-12),
                                            std::min(max_r * (1.0 + 1e-12), 1.0 - 1e-12), sep);
  return PlaneProjection{std::move(c2), std::move(dips2)};
}

}  // namespace pskit::geometry
