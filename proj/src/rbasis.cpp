#include "rbasis.hpp"

#include <cmath>

namespace pskit::rbasis {

namespace {

void check_exterior2(const Vec2& X) {
  if (geometry::norm2(X) < 1.0) fail(errc::domain_violation, "field point must satisfy |X| >= 1");
}

void check_exterior3(const Vec3& X) {
  if (geometry::norm3(X) < 1.0) fail(errc::domain_violation, "field point must satisfy |X| >= 1");
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) fail(errc::non_finite, what);
}

}  // namespace

RealSpec2::RealSpec2(geometry::SourceConfig sources, std::vector<double> masses,
                     std::vector<Vec2> dipoles, std::vector<MultipoleTerm> multipoles)
    : sources_(std::move(sources)),
      masses_(std::move(masses)),
      dipoles_(std::move(dipoles)),
      multipoles_(std::move(multipoles)) {
  if (sources_.dim() != 2) fail(errc::invalid_argument, "RealSpec2 needs 2D sources");
  if (!masses_.empty() && masses_.size() != sources_.size())
    fail(errc::invalid_argument, "masses must be absent or one per source");
  if (!dipoles_.empty() && dipoles_.size() != sources_.size())
    fail(errc::invalid_argument, "dipoles must be absent or one per source");
  for (double m : masses_) check_finite(m, "mass must be finite");
  for (const auto& d : dipoles_) {
    check_finite(d[0], "dipole component must be finite");
    check_finite(d[1], "dipole component must be finite");
  }
  for (const auto& t : multipoles_) {
    if (t.k >= sources_.size()) fail(errc::invalid_argument, "multipole references missing source");
    if (t.order < 1 || t.order > 3) fail(errc::bad_order, "multipole order must be 1, 2 or 3");
    check_finite(t.a, "multipole coefficient must be finite");
    check_finite(t.b, "multipole coefficient must be finite");
  }
}

double RealSpec2::mass_sum() const {
  double s = 0.0;
  for (double m : masses_) s += m;
  return s;
}

RealSpec3::RealSpec3(geometry::SourceConfig sources, std::vector<double> masses,
                     std::vector<Vec3> dipoles)
    : sources_(std::move(sources)), masses_(std::move(masses)), dipoles_(std::move(dipoles)) {
  if (sources_.dim() != 3) fail(errc::invalid_argument, "RealSpec3 needs 3D sources");
  if (!masses_.empty() && masses_.size() != sources_.size())
    fail(errc::invalid_argument, "masses must be absent or one per source");
  if (!dipoles_.empty() && dipoles_.size() != sources_.size())
    fail(errc::invalid_argument, "dipoles must be absent or one per source");
  for (double m : masses_) check_finite(m, "mass must be finite");
  for (const auto& d : dipoles_)
    for (double c : d) check_finite(c, "dipole component must be finite");
}

double RealSpec3::mass_sum() const {
  double s = 0.0;
  for (double m : masses_) s += m;
  return s;
}

double psi_r2(const Vec2& X, const Vec2& X_k) {
  check_exterior2(X);
  if (geometry::norm2(X_k) >= 1.0) fail(errc::domain_violation, "source must satisfy |X_k| < 1");
  double dx = X[0] - X_k[0], dy = X[1] - X_k[1];
  return std::log(geometry::norm2(X) / std::hypot(dx, dy));
}

Vec2 grad_psi_r2(const Vec2& X, const Vec2& X_k) {
  double dx = X[0] - X_k[0], dy = X[1] - X_k[1];
  double r2 = dx * dx + dy * dy;
  double b2 = X[0] * X[0] + X[1] * X[1];
  return {X[0] / b2 - dx / r2, X[1] / b2 - dy / r2};
}

MultipolePair multipole_r2(const Vec2& X, const Vec2& X_k, int n) {
  if (n < 1 || n > 3) fail(errc::bad_order, "multipole order must be 1, 2 or 3");
  double dx = X[0] - X_k[0], dy = X[1] - X_k[1];
  double r2 = dx * dx + dy * dy;
  if (r2 == 0.0) fail(errc::domain_violation, "field point coincides with source");
  switch (n) {
    case 1:
      return {-dx / r2, -dy / r2};
    case 2: {
      double r4 = r2 * r2;
      return {(dx * dx - dy * dy) / r4, 2.0 * dx * dy / r4};
    }
    default: {
      double r6 = r2 * r2 * r2;
      return {2.0 * dx * (3.0 * dy * dy - dx * dx) / r6,
              2.0 * dy * (3.0 * dx * dx - dy * dy) / r6};
    }
  }
}

double eval_expansion_r2(const RealSpec2& spec, const Vec2& X) {
  check_exterior2(X);
  double acc = 0.0;
  const auto& ms = spec.masses();
  for (std::size_t k = 0; k < ms.size(); ++k)
    if (ms[k] != 0.0) acc += ms[k] * psi_r2(X, spec.sources().point2(k));
  const auto& ds = spec.dipoles();
  for (std::size_t k = 0; k < ds.size(); ++k) {
    if (ds[k][0] == 0.0 && ds[k][1] == 0.0) continue;
    // D . grad ln(1/|X - X_k|) at order 1: components are exactly (A1, B1).
    MultipolePair p = multipole_r2(X, spec.sources().point2(k), 1);
    acc += ds[k][0] * p.A + ds[k][1] * p.B;
  }
  for (const auto& t : spec.multipoles()) {
    MultipolePair p = multipole_r2(X, spec.sources().point2(t.k), t.order);
    acc += t.a * p.A + t.b * p.B;
  }
  return acc;
}

double pm_r3(const Vec3& X, const Vec3& X_k, double m) {
  check_exterior3(X);
  if (geometry::norm3(X_k) >= 1.0) fail(errc::domain_violation, "source must satisfy |X_k| < 1");
  return m / geometry::norm3(geometry::sub3(X, X_k));
}

double dipole_r3(const Vec3& X, const Vec3& X_k, const Vec3& D) {
  check_exterior3(X);
  if (geometry::norm3(X_k) >= 1.0) fail(errc::domain_violation, "source must satisfy |X_k| < 1");
  Vec3 d = geometry::sub3(X, X_k);
  double r = geometry::norm3(d);
  return -geometry::dot3(D, d) / (r * r * r);
}

double eval_expansion_r3(const RealSpec3& spec, const Vec3& X) {
  check_exterior3(X);
  double acc = 0.0;
  const auto& ms = spec.masses();
  for (std::size_t k = 0; k < ms.size(); ++k)
    if (ms[k] != 0.0) acc += pm_r3(X, spec.sources().point(k), ms[k]);
  const auto& ds = spec.dipoles();
  for (std::size_t k = 0; k < ds.size(); ++k)
    if (geometry::norm3(ds[k]) != 0.0) acc += dipole_r3(X, spec.sources().point(k), ds[k]);
  return acc;
}

MultipolePair pole_to_multipole(cplx mu, int n) {
  double a = mu.real(), b = mu.imag();
  switch (n) {
    case 1: return {-a, -b};
    case 2: return {a, b};
    case 3: return {-0.5 * a, 0.5 * b};
    default: fail(errc::bad_order, "multipole order must be 1, 2 or 3");
  }
}

cplx multipole_to_pole(const MultipolePair& ab, int n) {
  switch (n) {
    case 1: return {-ab.A, -ab.B};
    case 2: return {ab.A, ab.B};
    case 3: return {-2.0 * ab.A, 2.0 * ab.B};
    default: fail(errc::bad_order, "multipole order must be 1, 2 or 3");
  }
}

}  // namespace pskit::rbasis
