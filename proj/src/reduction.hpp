#pragma once

#include <vector>

#include "rbasis.hpp"

namespace pskit::reduction {

using geometry::Vec2;
using geometry::Vec3;

/// Exact truncated line integral of 1/sqrt(a^2+z^2) - 1/sqrt(b^2+z^2) over
/// [-L, L]; tends to 2 ln(b/a) = 2 Psi as L grows.
double line_integral_pm(double a, double b, double L);

struct ReduceOptions {
  double L = 1e4;
  int probe_points = 20;
  double probe_radius = 2.0;
  double quad_tol = 1e-10;
};

struct ReduceReport {
  rbasis::RealSpec2 spec2;
  double defect = 0.0;         // max probe-point mismatch against 2*sum Psi terms
  double z_defect = 0.0;       // axial dipole component integral (dipole case)
  double tail_estimate = 0.0;  // Richardson |I(2L) - I(L)| (dipole case)
  double L = 0.0;
  double probe_radius = 0.0;
  Vec3 axis{0.0, 0.0, 0.0};
  std::vector<double> per_probe;
};

/// Collapses a zero-total-mass R3 point-mass expansion onto the plane
/// orthogonal to a preferred axis; the defect compares the truncated
/// line-integral closed form against 2 * sum m_k Psi_k at probe points.
ReduceReport reduce_pm_r3(const rbasis::RealSpec3& spec, const ReduceOptions& opt = {});

/// Same collapse for point dipoles; in-plane components are checked by
/// quadrature against 2 * sum D2_k . grad Psi_k, axis components must
/// integrate to (near) zero.
ReduceReport reduce_dipole_r3(const rbasis::RealSpec3& spec, const ReduceOptions& opt = {});

}  // namespace pskit::reduction
