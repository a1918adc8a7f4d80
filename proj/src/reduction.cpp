#include "reduction.hpp"

#include <cmath>
#include <numbers>

#include "quadrature.hpp"

namespace pskit::reduction {

namespace {

using geometry::DirectionSet;
using geometry::SourceConfig;

struct Frame {
  Vec3 axis, u, v;
};

// Preferred axis plus the in-plane frame used by project_to_plane (rebuilt
// here with the same deterministic construction).
Frame choose_frame(const SourceConfig& config3, const std::vector<Vec3>& extra) {
  std::vector<Vec3> pts;
  pts.reserve(config3.size());
  for (std::size_t k = 0; k < config3.size(); ++k) pts.push_back(config3.point(k));

  DirectionSet extras;
  // Avoid axes through any source: the origin counter-terms must project off
  // the origin as well.
  for (const auto& p : pts) extras.insert_with_negation(p);
  for (const auto& d : extra)
    if (geometry::norm3(d) > 0.0) extras.insert_with_negation(d);

  Vec3 axis = geometry::find_preferred_axis(pts, extras);
  Vec3 t = std::abs(axis[0]) <= std::abs(axis[1]) && std::abs(axis[0]) <= std::abs(axis[2])
               ? Vec3{1.0, 0.0, 0.0}
               : (std::abs(axis[1]) <= std::abs(axis[2]) ? Vec3{0.0, 1.0, 0.0}
                                                         : Vec3{0.0, 0.0, 1.0});
  Vec3 w{axis[1] * t[2] - axis[2] * t[1], axis[2] * t[0] - axis[0] * t[2],
         axis[0] * t[1] - axis[1] * t[0]};
  double nw = geometry::norm3(w);
  Vec3 v = geometry::scale3(w, 1.0 / nw);
  Vec3 u{v[1] * axis[2] - v[2] * axis[1], v[2] * axis[0] - v[0] * axis[2],
         v[0] * axis[1] - v[1] * axis[0]};
  return {axis, u, v};
}

Vec3 embed(const Frame& f, const Vec2& p, double t) {
  return {p[0] * f.u[0] + p[1] * f.v[0] + t * f.axis[0],
          p[0] * f.u[1] + p[1] * f.v[1] + t * f.axis[1],
          p[0] * f.u[2] + p[1] * f.v[2] + t * f.axis[2]};
}

std::vector<Vec2> probe_ring(int n, double radius) {
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double th = 2.0 * std::numbers::pi * (static_cast<double>(i) + 0.25) / n;
    out.push_back({radius * std::cos(th), radius * std::sin(th)});
  }
  return out;
}

}  // namespace

double line_integral_pm(double a, double b, double L) {
  if (!(a > 0.0 && b > 0.0 && L > 0.0)) fail(errc::domain_violation, "need a, b, L > 0");
  double ra = a / L, rb = b / L;
  return 2.0 * std::log((1.0 + std::sqrt(ra * ra + 1.0)) / (1.0 + std::sqrt(rb * rb + 1.0))) -
         2.0 * std::log(a / b);
}

ReduceReport reduce_pm_r3(const rbasis::RealSpec3& spec, const ReduceOptions& opt) {
  if (spec.masses().empty()) fail(errc::empty_input, "no masses to reduce");
  if (std::abs(spec.mass_sum()) > 1e-12)
    fail(errc::mass_imbalance, "reduction requires sum of masses = 0");

  Frame f = choose_frame(spec.sources(), {});
  auto proj = geometry::project_to_plane(spec.sources(), f.axis);

  ReduceReport rep{rbasis::RealSpec2(proj.config2, spec.masses(), {}, {}),
                   0.0, 0.0, 0.0, opt.L, opt.probe_radius, f.axis, {}};
  for (const Vec2& X : probe_ring(opt.probe_points, opt.probe_radius)) {
    double b = geometry::norm2(X);
    double truncated = 0.0, limit = 0.0;
    for (std::size_t k = 0; k < spec.masses().size(); ++k) {
      if (spec.masses()[k] == 0.0) continue;
      Vec2 Xk = proj.config2.point2(k);
      double a = std::hypot(X[0] - Xk[0], X[1] - Xk[1]);
      truncated += spec.masses()[k] * line_integral_pm(a, b, opt.L);
      limit += 2.0 * spec.masses()[k] * rbasis::psi_r2(X, Xk);
    }
    double d = std::abs(truncated - limit);
    rep.per_probe.push_back(d);
    rep.defect = std::max(rep.defect, d);
  }
  return rep;
}

ReduceReport reduce_dipole_r3(const rbasis::RealSpec3& spec, const ReduceOptions& opt) {
  if (spec.dipoles().empty()) fail(errc::empty_input, "no dipoles to reduce");

  Frame f = choose_frame(spec.sources(), spec.dipoles());
  auto proj = geometry::project_to_plane(spec.sources(), f.axis, spec.dipoles());

  ReduceReport rep{rbasis::RealSpec2(proj.config2, {}, proj.dipoles2, {}),
                   0.0, 0.0, 0.0, opt.L, opt.probe_radius, f.axis, {}};

  auto term_gradient_dot = [&](const Vec3& P) {
    // Sum over sources of D_k . grad_X (1/|X - X_k| - 1/|X|), the per-source
    // origin counter-term included.
    double acc = 0.0;
    for (std::size_t k = 0; k < spec.dipoles().size(); ++k) {
      const Vec3& Dk = spec.dipoles()[k];
      if (geometry::norm3(Dk) == 0.0) continue;
      Vec3 d = geometry::sub3(P, spec.sources().point(k));
      double r = geometry::norm3(d);
      double r0 = geometry::norm3(P);
      acc += -geometry::dot3(Dk, d) / (r * r * r) + geometry::dot3(Dk, P) / (r0 * r0 * r0);
    }
    return acc;
  };

  for (const Vec2& X : probe_ring(opt.probe_points, opt.probe_radius)) {
    auto integrand = [&](double t) { return term_gradient_dot(embed(f, X, t)); };
    double quad = quadrature::adaptive(integrand, -opt.L, opt.L, opt.quad_tol);
    double quad2 = quadrature::adaptive(integrand, -2.0 * opt.L, 2.0 * opt.L, opt.quad_tol);
    rep.tail_estimate = std::max(rep.tail_estimate, std::abs(quad2 - quad));

    double limit = 0.0;
    for (std::size_t k = 0; k < proj.dipoles2.size(); ++k) {
      Vec2 g = rbasis::grad_psi_r2(X, proj.config2.point2(k));
      limit += 2.0 * (proj.dipoles2[k][0] * g[0] + proj.dipoles2[k][1] * g[1]);
    }
    double d = std::abs(quad - limit);
    rep.per_probe.push_back(d);
    rep.defect = std::max(rep.defect, d);

    // Axis components integrate exactly to a boundary difference of 1/r.
    double zpart = 0.0;
    for (std::size_t k = 0; k < spec.dipoles().size(); ++k) {
      double dz = geometry::dot3(spec.dipoles()[k], f.axis);
      if (dz == 0.0) continue;
      for (double sL : {opt.L, -opt.L}) {
        Vec3 P = embed(f, X, sL);
        double sign = sL > 0.0 ? 1.0 : -1.0;
        zpart += sign * dz *
                 (1.0 / geometry::norm3(geometry::sub3(P, spec.sources().point(k))) -
                  1.0 / geometry::norm3(P));
      }
    }
    rep.z_defect = std::max(rep.z_defect, std::abs(zpart));
  }
  return rep;
}

}  // namespace pskit::reduction
