#pragma once

#include <Eigen/Dense>
#include <complex>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"

namespace pskit::matrices {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;

/// Truncated coefficient matrix of power-series conditions. Row i (1-based)
/// is the condition on z^{-(row_offset + i - 1)}; kind_layout names the
/// column blocks.
struct MomentMatrix {
  cmat entries;
  int row_offset = 1;
  std::string kind_layout;
  std::vector<cplx> nodes;
};

enum class Kind { log, pole1, pole2 };
std::string kind_name(Kind k);

struct SvdInfo {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double cond = 0.0;
};

/// G, N, X, U, C for one node set, with singular-value diagnostics of C and
/// the conditioning of G. `flagged` marks results past the cond(G) guard.
struct CMatrixBundle {
  cmat G, N, X, U, C;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double cond = 0.0;
  double cond_G = 0.0;
  bool flagged = false;
};

struct CMatrixOptions {
  int max_nodes = 12;           // double-precision guard
  double cond_threshold = 1e12; // past this, flagged = true
};

// Nodes must be pairwise distinct (exact comparison, so near-duplicates can
// be probed); zero nodes are rejected where a construction divides by z_k.
void check_distinct(const std::vector<cplx>& nodes);
void check_nonzero(const std::vector<cplx>& nodes);

/// entry(i,k) = z_k^{i-1}, i = 1..rows.
MomentMatrix vandermonde(const std::vector<cplx>& nodes, int rows);

Eigen::MatrixXcd diag_N(int n);
Eigen::MatrixXcd diag_X(const std::vector<cplx>& nodes);

/// Square block with entry(n,k) = z_k^n / n; equals N^{-1} G X.
MomentMatrix log_moment_matrix(const std::vector<cplx>& nodes);

/// Square condition block for a pure order-m pole expansion: G for m = 1,
/// rows S_{m,n} z_k^n (n = 1..N_k) for m >= 2.
MomentMatrix pole_moment_block(const std::vector<cplx>& nodes, int m);

/// Truncated condition system of z*h for the requested kinds, rows >= 1.
/// Column blocks in order (rho', mu, nu) where rho'_k = z_k rho_k; row n
/// entries are z_k^n/(n+1), z_k^n and n z_k^{n-1}. For {pole1, pole2} the
/// first 2 N_k rows are [G X | N G ; G X^{N_k+1} | (N + N_k I) G X^{N_k}].
MomentMatrix mixed_block_system(const std::vector<cplx>& nodes, const std::set<Kind>& kinds,
                                int rows);

struct Elimination {
  cmat mu_from_nu;  // -X^{-1} G^{-1} N G
  cmat reduced;     // (N_k I - G^{-1} N G) + X^{-N_k} G^{-1} N G X^{N_k}
};

/// Eliminates the first unknown block of the square {pole1, pole2} system;
/// C = G * reduced * G^{-1} holds.
Elimination eliminate_first_block(const MomentMatrix& system);

CMatrixBundle c_matrix(const std::vector<cplx>& nodes, const CMatrixOptions& opt = {});

/// C_m = m N_k I - G^{-1} N G + X^{-m N_k} G^{-1} N G X^{m N_k}.
CMatrixBundle c_m_matrix(const std::vector<cplx>& nodes, int m, const CMatrixOptions& opt = {});

/// Square 2 N_k log + simple-pole system on (rho, mu), row-scaled to
/// [G X | N G ; G X^{N_k+1} | (N + N_k I) G X^{N_k}]; its elimination yields
/// the same reduced matrix as the {pole1, pole2} case.
MomentMatrix log_pole_block(const std::vector<cplx>& nodes);

double min_singular_value(const cmat& M);
double condition_number(const cmat& M);
SvdInfo svd_info(const cmat& M);

}  // namespace pskit::matrices
