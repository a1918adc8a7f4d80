#include <doctest.h>

#include <cmath>
#include <random>

#include "cbasis.hpp"
#include "rbasis.hpp"
#include "rng.hpp"

using namespace pskit;
using geometry::Vec2;
using geometry::Vec3;
using cplx = std::complex<double>;

TEST_CASE("psi_r2 is the real part of the complex basis function") {
  auto eng = rng::engine(21);
  std::uniform_real_distribution<double> uni(-0.6, 0.6);
  std::uniform_real_distribution<double> ext(1.0, 5.0);
  for (int i = 0; i < 300; ++i) {
    Vec2 Xk{uni(eng), uni(eng)};
    Vec2 X{ext(eng), ext(eng)};
    cplx z{X[0], X[1]}, z_k{Xk[0], Xk[1]};
    CHECK(std::abs(rbasis::psi_r2(X, Xk) - cbasis::psi(z, z_k).real()) < 1e-13);
  }
}

TEST_CASE("grad_psi_r2 matches central finite differences") {
  Vec2 Xk{0.3, -0.4};
  Vec2 X{1.7, 1.1};
  auto g = rbasis::grad_psi_r2(X, Xk);
  double h = 1e-6;
  double gx = (rbasis::psi_r2({X[0] + h, X[1]}, Xk) - rbasis::psi_r2({X[0] - h, X[1]}, Xk)) / (2 * h);
  double gy = (rbasis::psi_r2({X[0], X[1] + h}, Xk) - rbasis::psi_r2({X[0], X[1] - h}, Xk)) / (2 * h);
  CHECK(g[0] == doctest::Approx(gx).epsilon(1e-7));
  CHECK(g[1] == doctest::Approx(gy).epsilon(1e-7));
}

TEST_CASE("multipole pairs are the real and adapted imaginary parts of 1/(z-z_k)^n") {
  auto eng = rng::engine(9);
  std::uniform_real_distribution<double> uni(-0.6, 0.6);
  std::uniform_real_distribution<double> ext(1.2, 4.0);
  for (int i = 0; i < 100; ++i) {
    Vec2 Xk{uni(eng), uni(eng)};
    Vec2 X{ext(eng), -ext(eng)};
    cplx z{X[0], X[1]}, z_k{Xk[0], Xk[1]};
    for (int n = 1; n <= 3; ++n) {
      auto p = rbasis::multipole_r2(X, Xk, n);
      // oracle: the correspondence map applied to a unit-real and unit-imag strength
      cplx w = std::pow(z - z_k, -n);
      auto re_pair = rbasis::pole_to_multipole({1.0, 0.0}, n);
      auto im_pair = rbasis::pole_to_multipole({0.0, 1.0}, n);
      CHECK(w.real() == doctest::Approx(re_pair.A * p.A + re_pair.B * p.B).epsilon(1e-12));
      CHECK((cplx{0.0, 1.0} * w).real() ==
            doctest::Approx(im_pair.A * p.A + im_pair.B * p.B).epsilon(1e-12));
    }
  }
}

TEST_CASE("order-1 multipole pair is minus the displacement over r^2") {
  Vec2 Xk{0.2, 0.1};
  Vec2 X{2.0, -1.0};
  double dx = X[0] - Xk[0], dy = X[1] - Xk[1], r2 = dx * dx + dy * dy;
  auto p = rbasis::multipole_r2(X, Xk, 1);
  CHECK(p.A == doctest::Approx(-dx / r2));
  CHECK(p.B == doctest::Approx(-dy / r2));
}

TEST_CASE("pole_to_multipole round-trips through multipole_to_pole") {
  for (int n = 1; n <= 3; ++n) {
    cplx mu{0.37, -1.2};
    auto ab = rbasis::pole_to_multipole(mu, n);
    CHECK(std::abs(rbasis::multipole_to_pole(ab, n) - mu) < 1e-15);
  }
}

TEST_CASE("full R2 correspondence: Re{mu/(z-z_k)^n} = a A + b B at many exterior points") {
  auto eng = rng::engine(33);
  std::uniform_real_distribution<double> uni(-0.6, 0.6);
  std::uniform_real_distribution<double> rad(1.1, 6.0);
  std::uniform_real_distribution<double> ang(0.0, 6.28);
  for (int n = 1; n <= 3; ++n) {
    cplx z_k{uni(eng), uni(eng)};
    cplx mu{uni(eng) + 1.0, uni(eng)};
    auto ab = rbasis::pole_to_multipole(mu, n);
    for (int i = 0; i < 100; ++i) {
      cplx z = std::polar(rad(eng), ang(eng));
      double lhs = (mu * std::pow(z - z_k, -n)).real();
      auto p = rbasis::multipole_r2({z.real(), z.imag()}, {z_k.real(), z_k.imag()}, n);
      double rhs = ab.A * p.A + ab.B * p.B;
      CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("dipole_r3 matches the finite-difference directional derivative of 1/r") {
  Vec3 Xk{0.3, -0.2, 0.1};
  Vec3 X{1.5, 0.7, -1.1};
  Vec3 D{0.4, -0.9, 0.2};
  double h = 1e-6;
  auto inv_r = [&](const Vec3& P) { return 1.0 / geometry::norm3(geometry::sub3(P, Xk)); };
  // derivative with respect to the source position X_k equals minus the
  // derivative with respect to X of 1/|X - X_k| ... keep the oracle on X.
  double fd = 0.0;
  for (int c = 0; c < 3; ++c) {
    Vec3 Xp = X, Xm = X;
    Xp[c] += h;
    Xm[c] -= h;
    fd += D[c] * (inv_r(Xp) - inv_r(Xm)) / (2 * h);
  }
  CHECK(rbasis::dipole_r3(X, Xk, D) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("eval_expansion_r2 sums masses, dipoles, and multipole terms linearly") {
  auto cfg = geometry::SourceConfig::validate2({{0.3, 0.2}, {-0.4, 0.5}});
  rbasis::RealSpec2 spec(cfg, {1.0, -0.5}, {{0.2, 0.1}, {-0.3, 0.4}}, {{0, 2, 0.7, -0.2}});
  Vec2 X{2.5, -1.0};
  // linearity oracle: evaluating the pieces separately and summing
  rbasis::RealSpec2 only_mass(cfg, {1.0, -0.5}, {}, {});
  rbasis::RealSpec2 only_dip(cfg, {}, {{0.2, 0.1}, {-0.3, 0.4}}, {});
  rbasis::RealSpec2 only_mult(cfg, {}, {}, {{0, 2, 0.7, -0.2}});
  double total = rbasis::eval_expansion_r2(spec, X);
  double parts = rbasis::eval_expansion_r2(only_mass, X) + rbasis::eval_expansion_r2(only_dip, X) +
                 rbasis::eval_expansion_r2(only_mult, X);
  CHECK(total == doctest::Approx(parts).epsilon(1e-14));
}

TEST_CASE("eval_expansion_r3 decomposes the same way") {
  auto cfg = geometry::SourceConfig::validate3({{0.3, 0.2, 0.1}, {-0.4, 0.5, -0.2}});
  rbasis::RealSpec3 spec(cfg, {1.0, -1.0}, {{0.2, 0.1, -0.4}, {-0.3, 0.4, 0.2}});
  rbasis::RealSpec3 only_mass(cfg, {1.0, -1.0}, {});
  rbasis::RealSpec3 only_dip(cfg, {}, {{0.2, 0.1, -0.4}, {-0.3, 0.4, 0.2}});
  Vec3 X{1.4, -2.0, 0.6};
  CHECK(rbasis::eval_expansion_r3(spec, X) ==
        doctest::Approx(rbasis::eval_expansion_r3(only_mass, X) +
                        rbasis::eval_expansion_r3(only_dip, X)).epsilon(1e-14));
}

TEST_CASE("mass_sum adds up") {
  auto cfg = geometry::SourceConfig::validate3({{0.3, 0.2, 0.1}, {-0.4, 0.5, -0.2}});
  rbasis::RealSpec3 spec(cfg, {1.25, -1.25}, {});
  CHECK(spec.mass_sum() == doctest::Approx(0.0));
}
