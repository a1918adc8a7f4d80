#include <doctest.h>

#include <random>

#include "lab.hpp"
#include "matrices.hpp"
#include "rng.hpp"
#include "xprec.hpp"

using namespace pskit;
using cplx = std::complex<double>;
using matrices::Kind;

TEST_CASE("vandermonde determinant equals the pairwise-difference product") {
  auto eng = rng::engine(101);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + trial % 7;
    auto nodes = lab::random_nodes(n, rng::trial_seed(101, trial));
    auto G = matrices::vandermonde(nodes, n);
    cplx det = G.entries.determinant();
    cplx prod{1.0, 0.0};
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) prod *= nodes[j] - nodes[i];
    CHECK(std::abs(det - prod) < 1e-10 * std::abs(prod));
  }
}

TEST_CASE("2x2 vandermonde matches the closed form") {
  std::vector<cplx> nodes = {{0.3, 0.1}, {-0.2, 0.4}};
  auto G = matrices::vandermonde(nodes, 2);
  CHECK(G.entries(0, 0) == cplx{1.0, 0.0});
  CHECK(G.entries(0, 1) == cplx{1.0, 0.0});
  CHECK(G.entries(1, 0) == nodes[0]);
  CHECK(G.entries(1, 1) == nodes[1]);
}

TEST_CASE("log moment matrix equals N^{-1} G X entrywise") {
  auto nodes = lab::random_nodes(5, 7);
  auto M = matrices::log_moment_matrix(nodes);
  auto G = matrices::vandermonde(nodes, 5).entries;
  auto N = matrices::diag_N(5);
  auto X = matrices::diag_X(nodes);
  Eigen::MatrixXcd expect = N.inverse() * G * X;
  CHECK((M.entries - expect).norm() < 1e-14 * expect.norm());
}

TEST_CASE("order-1 pole block is the vandermonde matrix itself") {
  auto nodes = lab::random_nodes(4, 8);
  auto M = matrices::pole_moment_block(nodes, 1);
  auto G = matrices::vandermonde(nodes, 4).entries;
  CHECK((M.entries - G).norm() < 1e-14 * G.norm());
}

TEST_CASE("duplicate or zero nodes are rejected") {
  std::vector<cplx> dup = {{0.3, 0.1}, {0.3, 0.1}};
  CHECK_THROWS_AS(matrices::vandermonde(dup, 2), error);
  std::vector<cplx> zero = {{0.0, 0.0}, {0.3, 0.1}};
  CHECK_THROWS_AS(matrices::c_matrix(zero), error);
}

TEST_CASE("mixed {pole1, pole2} system has the documented leading block rows") {
  auto nodes = lab::random_nodes(3, 13);
  const int n = 3;
  auto sys = matrices::mixed_block_system(nodes, {Kind::pole1, Kind::pole2}, 2 * n);
  auto G = matrices::vandermonde(nodes, n).entries;
  auto N = matrices::diag_N(n);
  auto X = matrices::diag_X(nodes);
  Eigen::MatrixXcd Xn = X;
  for (int i = 1; i < n; ++i) Xn = Xn * X;  // X^{N_k}
  Eigen::MatrixXcd expect(2 * n, 2 * n);
  expect.block(0, 0, n, n) = G * X;
  expect.block(0, n, n, n) = N * G;
  expect.block(n, 0, n, n) = G * Xn * X;
  expect.block(n, n, n, n) = (N + double(n) * Eigen::MatrixXcd::Identity(n, n)) * G * Xn;
  CHECK((sys.entries - expect).norm() < 1e-12 * expect.norm());
}

TEST_CASE("elimination produces the documented reduced matrix and C similarity") {
  for (int n : {2, 3, 5, 8}) {
    auto nodes = lab::random_nodes(n, 1000 + n);
    auto sys = matrices::mixed_block_system(nodes, {Kind::pole1, Kind::pole2}, 2 * n);
    auto elim = matrices::eliminate_first_block(sys);
    auto G = matrices::vandermonde(nodes, n).entries;
    auto N = matrices::diag_N(n);
    auto X = matrices::diag_X(nodes);
    Eigen::MatrixXcd Ginv = G.inverse();
    Eigen::MatrixXcd W = Ginv * N * G;
    Eigen::MatrixXcd Xn = Eigen::MatrixXcd::Identity(n, n);
    for (int i = 0; i < n; ++i) Xn = Xn * X;
    Eigen::MatrixXcd expect_mu = -X.inverse() * W;
    Eigen::MatrixXcd expect_red =
        (double(n) * Eigen::MatrixXcd::Identity(n, n) - W) + Xn.inverse() * W * Xn;
    CHECK((elim.mu_from_nu - expect_mu).norm() < 1e-10 * expect_mu.norm());
    CHECK((elim.reduced - expect_red).norm() < 1e-10 * expect_red.norm());
    auto bundle = matrices::c_matrix(nodes);
    Eigen::MatrixXcd sim = G * elim.reduced * Ginv;
    CHECK((sim - bundle.C).norm() < 1e-10 * bundle.C.norm());
  }
}

TEST_CASE("log + simple pole system eliminates to the same reduced matrix") {
  for (int n : {2, 4, 6}) {
    auto nodes = lab::random_nodes(n, 2000 + n);
    auto lp = matrices::log_pole_block(nodes);
    auto elim_lp = matrices::eliminate_first_block(lp);
    auto pp = matrices::mixed_block_system(nodes, {Kind::pole1, Kind::pole2}, 2 * n);
    auto elim_pp = matrices::eliminate_first_block(pp);
    CHECK((elim_lp.reduced - elim_pp.reduced).norm() < 1e-10 * elim_pp.reduced.norm());
  }
}

TEST_CASE("C matrix collapses to [1] and C_m to [m] for a single node") {
  std::vector<cplx> one = {{0.37, -0.21}};
  auto c = matrices::c_matrix(one);
  CHECK(std::abs(c.C(0, 0) - cplx{1.0, 0.0}) < 1e-15);
  CHECK(c.sigma_min == doctest::Approx(1.0));
  for (int m = 2; m <= 4; ++m) {
    auto cm = matrices::c_m_matrix(one, m);
    CHECK(std::abs(cm.C(0, 0) - cplx{double(m), 0.0}) < 1e-13);
  }
}

TEST_CASE("C_m from the ratio construction matches the direct conjugation") {
  for (int n : {2, 3, 4}) {
    auto nodes = lab::random_nodes(n, 3000 + n);
    int m = 2;
    auto cm = matrices::c_m_matrix(nodes, m);
    auto G = matrices::vandermonde(nodes, n).entries;
    auto N = matrices::diag_N(n);
    auto X = matrices::diag_X(nodes);
    Eigen::MatrixXcd W = G.inverse() * N * G;
    Eigen::MatrixXcd Xmn = Eigen::MatrixXcd::Identity(n, n);
    for (int i = 0; i < m * n; ++i) Xmn = Xmn * X;
    Eigen::MatrixXcd expect = double(m * n) * Eigen::MatrixXcd::Identity(n, n) - W +
                              Xmn.inverse() * W * Xmn;
    CHECK((cm.C - expect).norm() < 1e-9 * expect.norm());
  }
}

TEST_CASE("svd helpers agree with a diagonal matrix's known spectrum") {
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(3, 3);
  D(0, 0) = 5.0;
  D(1, 1) = {0.0, 2.0};  // modulus 2
  D(2, 2) = 0.25;
  CHECK(matrices::min_singular_value(D) == doctest::Approx(0.25));
  CHECK(matrices::condition_number(D) == doctest::Approx(20.0));
  auto info = matrices::svd_info(D);
  CHECK(info.sigma_max == doctest::Approx(5.0));
  CHECK(info.sigma_min == doctest::Approx(0.25));
}

TEST_CASE("extended-precision sigma agrees with double precision on benign nodes") {
  auto nodes = lab::random_nodes(4, 555);
  auto bundle = matrices::c_matrix(nodes);
  auto sp = xprec::c_sigma_extended(nodes, 0);
  CHECK(sp.sigma_min == doctest::Approx(bundle.sigma_min).epsilon(1e-8));
  CHECK(sp.sigma_max == doctest::Approx(bundle.sigma_max).epsilon(1e-8));
}

TEST_CASE("extended-precision C_m sigma agrees too") {
  auto nodes = lab::random_nodes(3, 556);
  auto bundle = matrices::c_m_matrix(nodes, 3);
  auto sp = xprec::c_sigma_extended(nodes, 3);
  CHECK(sp.sigma_min == doctest::Approx(bundle.sigma_min).epsilon(1e-8));
}

TEST_CASE("ill-conditioned vandermonde flags the bundle instead of throwing") {
  // near-duplicate nodes: legal input, catastrophic conditioning
  std::vector<cplx> nodes = {{0.3, 0.1}, {0.3 + 2e-9, 0.1}, {0.3, 0.1 + 1e-9}, {-0.4, 0.2},
                             {0.1, -0.5}, {0.2, 0.6}};
  auto bundle = matrices::c_matrix(nodes);
  CHECK(bundle.flagged);
}
