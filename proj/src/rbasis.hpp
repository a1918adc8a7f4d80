#pragma once

#include <complex>
#include <vector>

#include "geometry.hpp"

namespace pskit::rbasis {

using geometry::Vec2;
using geometry::Vec3;
using cplx = std::complex<double>;

/// R2 expansion: point masses, point dipoles, and order-n multipole pairs
/// (a, b) for n in {1,2,3}, all over one source configuration.
struct MultipoleTerm {
  std::size_t k;
  int order;  // 1..3
  double a;
  double b;
};

class RealSpec2 {
public:
  RealSpec2(geometry::SourceConfig sources, std::vector<double> masses,
            std::vector<Vec2> dipoles, std::vector<MultipoleTerm> multipoles);

  const geometry::SourceConfig& sources() const { return sources_; }
  const std::vector<double>& masses() const { return masses_; }
  const std::vector<Vec2>& dipoles() const { return dipoles_; }
  const std::vector<MultipoleTerm>& multipoles() const { return multipoles_; }

  double mass_sum() const;

private:
  geometry::SourceConfig sources_;
  std::vector<double> masses_;    // empty or size N_k
  std::vector<Vec2> dipoles_;     // empty or size N_k
  std::vector<MultipoleTerm> multipoles_;
};

class RealSpec3 {
public:
  RealSpec3(geometry::SourceConfig sources, std::vector<double> masses,
            std::vector<Vec3> dipoles);

  const geometry::SourceConfig& sources() const { return sources_; }
  const std::vector<double>& masses() const { return masses_; }
  const std::vector<Vec3>& dipoles() const { return dipoles_; }

  double mass_sum() const;

private:
  geometry::SourceConfig sources_;
  std::vector<double> masses_;
  std::vector<Vec3> dipoles_;
};

/// Psi_k(X) = ln(|X| / |X - X_k|); the real part of psi(z, z_k).
double psi_r2(const Vec2& X, const Vec2& X_k);

/// In-plane gradient of Psi_k with respect to X.
Vec2 grad_psi_r2(const Vec2& X, const Vec2& X_k);

/// The independent multipole pair (A^(n), B^(n)) at order n in {1,2,3}:
///   n=1: -(dx, dy)/r^2
///   n=2: ((dx^2-dy^2)/r^4, 2 dx dy / r^4)
///   n=3: (2 dx (3 dy^2 - dx^2)/r^6, 2 dy (3 dx^2 - dy^2)/r^6)
struct MultipolePair {
  double A;
  double B;
};
MultipolePair multipole_r2(const Vec2& X, const Vec2& X_k, int n);

double eval_expansion_r2(const RealSpec2& spec, const Vec2& X);

/// m / |X - X_k| in R3.
double pm_r3(const Vec3& X, const Vec3& X_k, double m);

/// D . grad_X |X - X_k|^{-1} = -D . (X - X_k)/|X - X_k|^3.
double dipole_r3(const Vec3& X, const Vec3& X_k, const Vec3& D);

double eval_expansion_r3(const RealSpec3& spec, const Vec3& X);

/// The passive coefficient map taking a complex pole strength mu to the
/// multipole pair with Re{mu/(z - z_k)^n} = a A^(n) + b B^(n):
///   n=1: (-alpha, -beta); n=2: (alpha, beta); n=3: (-alpha/2, beta/2).
MultipolePair pole_to_multipole(cplx mu, int n);
cplx multipole_to_pole(const MultipolePair& ab, int n);

}  // namespace pskit::rbasis
