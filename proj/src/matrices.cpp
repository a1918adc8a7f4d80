#include "matrices.hpp"

#include <cmath>

#include "cbasis.hpp"

namespace pskit::matrices {

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::log: return "log";
    case Kind::pole1: return "pole1";
    case Kind::pole2: return "pole2";
  }
  return "?";
}

namespace {

int check_count(const std::vector<cplx>& nodes) {
  if (nodes.empty()) fail(errc::empty_input, "node set is empty");
  for (const auto& z : nodes)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      fail(errc::non_finite, "node is not finite");
  return static_cast<int>(nodes.size());
}

void check_finite_matrix(const cmat& M) {
  if (!M.allFinite()) fail(errc::non_finite, "matrix has non-finite entries");
}

// Solve A * Y = B; errc::singular_block only for exactly singular A. Merely
// ill-conditioned systems still solve — callers flag those via cond_G and
// the extended-precision recheck, so near-degenerate nodes stay probeable.
cmat solve_left(const cmat& A, const cmat& B) {
  Eigen::FullPivLU<cmat> lu(A);
  lu.setThreshold(std::numeric_limits<double>::min());
  if (!lu.isInvertible()) fail(errc::singular_block, "block matrix is exactly singular");
  return lu.solve(B);
}

// Solve Y * A = B, i.e. A^T Y^T = B^T.
cmat solve_right(const cmat& A, const cmat& B) {
  return solve_left(A.transpose(), B.transpose()).transpose();
}

}  // namespace

void check_distinct(const std::vector<cplx>& nodes) {
  for (std::size_t j = 0; j < nodes.size(); ++j)
    for (std::size_t k = j + 1; k < nodes.size(); ++k)
      if (nodes[j] == nodes[k]) fail(errc::duplicate_nodes, "nodes must be pairwise distinct");
}

void check_nonzero(const std::vector<cplx>& nodes) {
  for (const auto& z : nodes)
    if (z == cplx{0.0, 0.0}) fail(errc::zero_node, "nodes must be nonzero");
}

MomentMatrix vandermonde(const std::vector<cplx>& nodes, int rows) {
  int n = check_count(nodes);
  check_distinct(nodes);
  if (rows < 1) fail(errc::invalid_argument, "rows must be >= 1");
  cmat M(rows, n);
  for (int k = 0; k < n; ++k) {
    cplx p{1.0, 0.0};
    for (int i = 0; i < rows; ++i, p *= nodes[k]) M(i, k) = p;
  }
  return {std::move(M), 1, "vandermonde", nodes};
}

cmat diag_N(int n) {
  if (n < 1) fail(errc::invalid_argument, "n must be >= 1");
  cmat M = cmat::Zero(n, n);
  for (int i = 0; i < n; ++i) M(i, i) = static_cast<double>(i + 1);
  return M;
}

cmat diag_X(const std::vector<cplx>& nodes) {
  int n = check_count(nodes);
  check_nonzero(nodes);
  cmat M = cmat::Zero(n, n);
  for (int i = 0; i < n; ++i) M(i, i) = nodes[static_cast<std::size_t>(i)];
  return M;
}

MomentMatrix log_moment_matrix(const std::vector<cplx>& nodes) {
  int n = check_count(nodes);
  check_distinct(nodes);
  check_nonzero(nodes);
  cmat M(n, n);
  for (int k = 0; k < n; ++k) {
    cplx p = nodes[static_cast<std::size_t>(k)];
    for (int i = 0; i < n; ++i, p *= nodes[static_cast<std::size_t>(k)])
      M(i, k) = p / static_cast<double>(i + 1);
  }
  return {std::move(M), 1, "log", nodes};
}

MomentMatrix pole_moment_block(const std::vector<cplx>& nodes, int m) {
  if (m < 1) fail(errc::bad_order, "pole order must be >= 1");
  if (m == 1) return vandermonde(nodes, static_cast<int>(nodes.size()));
  int n = check_count(nodes);
  check_distinct(nodes);
  check_nonzero(nodes);
  cmat M(n, n);
  for (int k = 0; k < n; ++k) {
    cplx p = nodes[static_cast<std::size_t>(k)];
    for (int i = 0; i < n; ++i, p *= nodes[static_cast<std::size_t>(k)])
      M(i, k) = cbasis::binomial_pole_coefficient(m, i + 1) * p;
  }
  return {std::move(M), 1, "pole" + std::to_string(m), nodes};
}

MomentMatrix mixed_block_system(const std::vector<cplx>& nodes, const std::set<Kind>& kinds,
                                int rows) {
  int n = check_count(nodes);
  check_distinct(nodes);
  check_nonzero(nodes);
  if (kinds.empty()) fail(errc::bad_sampler, "at least one expansion kind is required");
  if (rows < n * static_cast<int>(kinds.size()))
    fail(errc::invalid_argument, "rows must cover every unknown block");
  cmat M(rows, n * static_cast<int>(kinds.size()));
  std::string layout;
  int col0 = 0;
  for (Kind kind : kinds) {  // std::set order: log, pole1, pole2
    for (int k = 0; k < n; ++k) {
      cplx zk = nodes[static_cast<std::size_t>(k)];
      cplx p{1.0, 0.0};  // z_k^{n-1} running power
      for (int i = 0; i < rows; ++i, p *= zk) {
        double nn = static_cast<double>(i + 1);
        switch (kind) {
          case Kind::log: M(i, col0 + k) = p * zk / (nn + 1.0); break;  // rho', z_k^n/(n+1)
          case Kind::pole1: M(i, col0 + k) = p * zk; break;             // mu, z_k^n
          case Kind::pole2: M(i, col0 + k) = nn * p; break;             // nu, n z_k^{n-1}
        }
      }
    }
    if (!layout.empty()) layout += "|";
    layout += kind == Kind::log ? "log" : (kind == Kind::pole1 ? "pole1" : "pole2");
    col0 += n;
  }
  return {std::move(M), 2, layout, nodes};
}

Elimination eliminate_first_block(const MomentMatrix& system) {
  int two_n = static_cast<int>(system.entries.rows());
  if (system.entries.cols() != two_n || two_n % 2 != 0 || two_n == 0)
    fail(errc::invalid_argument, "elimination needs a square 2 N_k x 2 N_k system");
  if (system.nodes.size() != static_cast<std::size_t>(two_n / 2))
    fail(errc::invalid_argument, "system does not carry one node per column pair");
  const auto& nodes = system.nodes;
  int n = two_n / 2;

  cmat G = vandermonde(nodes, n).entries;
  cmat N = diag_N(n);
  cmat X = diag_X(nodes);
  cmat NG_of_G = solve_left(G, N * G);  // G^{-1} N G

  Eigen::FullPivLU<cmat> luX(X);
  if (!luX.isInvertible()) fail(errc::singular_block, "X is numerically singular");
  cmat mu_from_nu = -luX.solve(NG_of_G);

  // X^{-N_k} W X^{N_k} entrywise as W_ij (z_j/z_i)^{N_k}; avoids forming
  // extreme diagonal powers.
  cmat conj = NG_of_G;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      conj(i, j) *= std::pow(nodes[static_cast<std::size_t>(j)] / nodes[static_cast<std::size_t>(i)],
                             n);
  cmat reduced = static_cast<double>(n) * cmat::Identity(n, n) - NG_of_G + conj;
  return {std::move(mu_from_nu), std::move(reduced)};
}

CMatrixBundle c_matrix(const std::vector<cplx>& nodes, const CMatrixOptions& opt) {
  int n = check_count(nodes);
  check_distinct(nodes);
  check_nonzero(nodes);
  if (n > opt.max_nodes)
    fail(errc::invalid_argument, "node count exceeds the configured double-precision maximum");

  CMatrixBundle out;
  out.G = vandermonde(nodes, n).entries;
  out.N = diag_N(n);
  out.X = diag_X(nodes);
  out.cond_G = condition_number(out.G);

  cmat Xn = out.X;
  for (int i = 1; i < n; ++i) Xn *= out.X;  // X^{N_k}
  if (n == 1) {
    // scalars commute, so U^{-1} N U = N exactly; avoids z/z rounding
    out.U = Xn;
    out.C = cmat::Identity(1, 1);
  } else {
    out.U = solve_right(out.G, out.G * Xn);  // G X^{N_k} G^{-1}
    cmat B = solve_left(out.U, out.N * out.U);
    out.C = static_cast<double>(n) * cmat::Identity(n, n) - out.N + B;
  }
  check_finite_matrix(out.C);

  SvdInfo s = svd_info(out.C);
  out.sigma_min = s.sigma_min;
  out.sigma_max = s.sigma_max;
  out.cond = s.cond;
  out.flagged = out.cond_G > opt.cond_threshold;
  return out;
}

CMatrixBundle c_m_matrix(const std::vector<cplx>& nodes, int m, const CMatrixOptions& opt) {
  if (m < 1) fail(errc::bad_order, "m must be >= 1");
  int n = check_count(nodes);
  check_distinct(nodes);
  check_nonzero(nodes);
  if (n > opt.max_nodes)
    fail(errc::invalid_argument, "node count exceeds the configured double-precision maximum");

  CMatrixBundle out;
  out.G = vandermonde(nodes, n).entries;
  out.N = diag_N(n);
  out.X = diag_X(nodes);
  out.cond_G = condition_number(out.G);

  if (n == 1) {
    out.C = cmat::Constant(1, 1, static_cast<double>(m));  // W and its conjugation cancel exactly
  } else {
    cmat W = solve_left(out.G, out.N * out.G);  // G^{-1} N G
    cmat conj = W;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        conj(i, j) *=
            std::pow(nodes[static_cast<std::size_t>(j)] / nodes[static_cast<std::size_t>(i)], m * n);
    out.C = static_cast<double>(m * n) * cmat::Identity(n, n) - W + conj;
  }
  check_finite_matrix(out.C);
  out.U = cmat();  // not formed on this route

  SvdInfo s = svd_info(out.C);
  out.sigma_min = s.sigma_min;
  out.sigma_max = s.sigma_max;
  out.cond = s.cond;
  out.flagged = out.cond_G > opt.cond_threshold;
  return out;
}

MomentMatrix log_pole_block(const std::vector<cplx>& nodes) {
  int n = check_count(nodes);
  check_distinct(nodes);
  check_nonzero(nodes);
  cmat G = vandermonde(nodes, n).entries;
  cmat N = diag_N(n);
  cmat X = diag_X(nodes);
  cmat Xn = cmat::Identity(n, n);
  for (int i = 0; i < n; ++i) Xn *= X;

  cmat M(2 * n, 2 * n);
  M.topLeftCorner(n, n) = G * X;
  M.topRightCorner(n, n) = N * G;
  M.bottomLeftCorner(n, n) = G * Xn * X;
  M.bottomRightCorner(n, n) = (N + static_cast<double>(n) * cmat::Identity(n, n)) * G * Xn;
  return {std::move(M), 1, "log|pole1 (row-scaled by N blocks)", nodes};
}

double min_singular_value(const cmat& M) {
  check_finite_matrix(M);
  Eigen::JacobiSVD<cmat> svd(M);
  return svd.singularValues().size() ? svd.singularValues().minCoeff() : 0.0;
}

double condition_number(const cmat& M) {
  SvdInfo s = svd_info(M);
  return s.cond;
}

SvdInfo svd_info(const cmat& M) {
  check_finite_matrix(M);
  Eigen::JacobiSVD<cmat> svd(M);
  const auto& sv = svd.singularValues();
  SvdInfo out;
  if (sv.size() == 0) return out;
  out.sigma_max = sv.maxCoeff();
  out.sigma_min = sv.minCoeff();
  out.cond = out.sigma_min > 0.0 ? out.sigma_max / out.sigma_min
                                 : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace pskit::matrices
