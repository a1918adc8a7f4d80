#pragma once

// Extended-precision (long double) re-verification path for the C / C_m
// singular-value probes. Kept free of Eigen so the scalar type is easy to
// widen; matrices here are tiny (N_k <= a few dozen).

#include <cmath>
#include <complex>
#include <vector>

#include "errors.hpp"

namespace pskit::xprec {

using xreal = long double;
using xcplx = std::complex<xreal>;

class XMat {
public:
  explicit XMat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, xcplx{0.0L, 0.0L}) {}
  int size() const { return n_; }
  xcplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const xcplx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

private:
  int n_;
  std::vector<xcplx> a_;
};

// In-place LU with partial pivoting; solves A Y = B overwriting B.
// (raw triangular solve; see lu_solve for the refined entry point)
inline void lu_solve_raw(XMat A, XMat& B) {
  int n = A.size();
  std::vector<int> piv(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(A(r, c)) > std::abs(A(p, c))) p = r;
    if (std::abs(A(p, c)) == 0.0L) fail(errc::singular_block, "extended LU hit a zero pivot");
    piv[static_cast<std::size_t>(c)] = p;
    if (p != c)
      for (int j = 0; j < n; ++j) {
        std::swap(A(c, j), A(p, j));
        std::swap(B(c, j), B(p, j));
      }
    for (int r = c + 1; r < n; ++r) {
      xcplx f = A(r, c) / A(c, c);
      A(r, c) = f;
      for (int j = c + 1; j < n; ++j) A(r, j) -= f * A(c, j);
      for (int j = 0; j < n; ++j) B(r, j) -= f * B(c, j);
    }
  }
  for (int c = n - 1; c >= 0; --c)
    for (int j = 0; j < n; ++j) {
      xcplx s = B(c, j);
      for (int k = c + 1; k < n; ++k) s -= A(c, k) * B(k, j);
      B(c, j) = s / A(c, c);
    }
}

// Solves A Y = B overwriting B, with two steps of iterative refinement.
// The refinement knocks the forward error of an ill-conditioned solve from
// cond^2 * eps back toward cond * eps, which the similarity comparison
// below needs for clustered node sets.
inline void lu_solve(const XMat& A, XMat& B) {
  int n = A.size();
  XMat Y = B;
  lu_solve_raw(A, Y);
  for (int step = 0; step < 2; ++step) {
    XMat R(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        xcplx s = B(i, j);
        for (int k = 0; k < n; ++k) s -= A(i, k) * Y(k, j);
        R(i, j) = s;
      }
    lu_solve_raw(A, R);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Y(i, j) += R(i, j);
  }
  B = Y;
}

// Singular values by one-sided Jacobi on the columns.
inline std::vector<xreal> singular_values(XMat A) {
  int n = A.size();
  for (int sweep = 0; sweep < 60; ++sweep) {
    xreal off = 0.0L;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        xreal app = 0.0L, aqq = 0.0L;
        xcplx apq{0.0L, 0.0L};
        for (int i = 0; i < n; ++i) {
          app += std::norm(A(i, p));
          aqq += std::norm(A(i, q));
          apq += std::conj(A(i, p)) * A(i, q);
        }
        xreal mag = std::abs(apq);
        if (mag <= 1e-36L * std::sqrt(app * aqq) || mag == 0.0L) continue;
        off = std::max(off, mag / std::sqrt(app * aqq + 1e-300L));
        xcplx phase = apq / mag;  // rotate q so the inner product is real
        xreal zeta = (aqq - app) / (2.0L * mag);
        xreal t = (zeta >= 0.0L ? 1.0L : -1.0L) /
                  (std::abs(zeta) + std::sqrt(1.0L + zeta * zeta));
        xreal cs = 1.0L / std::sqrt(1.0L + t * t);
        xreal sn = cs * t;
        for (int i = 0; i < n; ++i) {
          xcplx vp = A(i, p);
          xcplx vq = A(i, q) * std::conj(phase);
          A(i, p) = cs * vp - sn * vq;
          A(i, q) = sn * vp + cs * vq;
        }
      }
    if (off < 1e-30L) break;
  }
  std::vector<xreal> sv(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    xreal s = 0.0L;
    for (int i = 0; i < n; ++i) s += std::norm(A(i, j));
    sv[static_cast<std::size_t>(j)] = std::sqrt(s);
  }
  return sv;
}

struct SigmaPair {
  double sigma_min;
  double sigma_max;
};

/// ||G * reduced * G^{-1} - C||_F / ||C||_F in long double, where C comes
/// from the U-similarity route and `reduced` from the independent
/// elimination route. In double precision the two solves stack up to
/// cond(G)^2 * eps, which drowns a 1e-10 comparison for larger node sets;
/// the 64-bit mantissa restores the headroom.
inline double similarity_defect(const std::vector<std::complex<double>>& nodes) {
  int n = static_cast<int>(nodes.size());
  if (n < 1) fail(errc::empty_input, "node set is empty");
  auto zk_of = [&](int k) {
    return xcplx{nodes[static_cast<std::size_t>(k)].real(),
                 nodes[static_cast<std::size_t>(k)].imag()};
  };
  XMat G(n);
  for (int k = 0; k < n; ++k) {
    xcplx p{1.0L, 0.0L};
    for (int i = 0; i < n; ++i, p *= zk_of(k)) G(i, k) = p;
  }

  // Route 1: C = N_k I - N + U^{-1} N U with U from U G = G X^{N_k}.
  XMat Gt(n), Rt(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      xcplx f{1.0L, 0.0L};
      for (int q = 0; q < n; ++q) f *= zk_of(i);
      Gt(i, j) = G(j, i);
      Rt(i, j) = G(j, i) * f;  // (G X^{N_k})^T entry
    }
  lu_solve(Gt, Rt);  // Rt = U^T
  XMat U(n), NU(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      U(i, j) = Rt(j, i);
      NU(i, j) = static_cast<xreal>(i + 1) * Rt(j, i);
    }
  lu_solve(U, NU);  // NU = U^{-1} N U
  XMat C(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      C(i, j) = NU(i, j) +
                (i == j ? xcplx{static_cast<xreal>(n - (i + 1)), 0.0L} : xcplx{0.0L, 0.0L});

  // Route 2: reduced = (N_k I - W) + X^{-N_k} W X^{N_k}, W = G^{-1} N G.
  XMat W(n);
  {
    XMat A = G, NG(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) NG(i, j) = static_cast<xreal>(i + 1) * G(i, j);
    lu_solve(A, NG);
    W = NG;
  }
  XMat red(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      xcplx ratio = std::pow(zk_of(j) / zk_of(i), static_cast<xreal>(n));
      red(i, j) = -W(i, j) + W(i, j) * ratio +
                  (i == j ? xcplx{static_cast<xreal>(n), 0.0L} : xcplx{0.0L, 0.0L});
    }
  // sim = G * red * G^{-1}: first M = G * red, then solve sim G = M.
  XMat M(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      xcplx s{0.0L, 0.0L};
      for (int k = 0; k < n; ++k) s += G(i, k) * red(k, j);
      M(i, j) = s;
    }
  XMat Gt2(n), Mt(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Gt2(i, j) = G(j, i);
      Mt(i, j) = M(j, i);
    }
  lu_solve(Gt2, Mt);  // Mt = sim^T

  xreal num = 0.0L, den = 0.0L;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      num += std::norm(Mt(j, i) - C(i, j));
      den += std::norm(C(i, j));
    }
  return static_cast<double>(std::sqrt(num / den));
}

/// Rebuilds C_m = m N_k I - G^{-1} N G + X^{-m N_k} G^{-1} N G X^{m N_k}
/// (m = 0 selects the similarity form C = N_k I - N + U^{-1} N U) in long
/// double and returns its extreme singular values.
inline SigmaPair c_sigma_extended(const std::vector<std::complex<double>>& nodes, int m) {
  int n = static_cast<int>(nodes.size());
  if (n < 1) fail(errc::empty_input, "node set is empty");
  XMat G(n);
  for (int k = 0; k < n; ++k) {
    xcplx zk{nodes[static_cast<std::size_t>(k)].real(), nodes[static_cast<std::size_t>(k)].imag()};
    xcplx p{1.0L, 0.0L};
    for (int i = 0; i < n; ++i, p *= zk) G(i, k) = p;
  }

  XMat C(n);
  if (m == 0) {
    // U = G X^{N_k} G^{-1}; C = N_k I - N + U^{-1} N U.
    XMat GXn = G;
    for (int k = 0; k < n; ++k) {
      xcplx zk{nodes[static_cast<std::size_t>(k)].real(),
               nodes[static_cast<std::size_t>(k)].imag()};
      xcplx f{1.0L, 0.0L};
      for (int i = 0; i < n; ++i) f *= zk;
      for (int i = 0; i < n; ++i) GXn(i, k) = G(i, k) * f;
    }
    // Solve U from U G = G X^{N_k}: G^T U^T = (G X^{N_k})^T.
    XMat Gt(n), Rt(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Gt(i, j) = G(j, i);
        Rt(i, j) = GXn(j, i);
      }
    lu_solve(Gt, Rt);  // Rt = U^T
    XMat U(n), NU(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        U(i, j) = Rt(j, i);
        NU(i, j) = static_cast<xreal>(i + 1) * Rt(j, i);
      }
    lu_solve(U, NU);  // NU = U^{-1} N U
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        C(i, j) = NU(i, j) + (i == j ? xcplx{static_cast<xreal>(n - (i + 1)), 0.0L}
                                     : xcplx{0.0L, 0.0L});
  } else {
    XMat NG(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) NG(i, j) = static_cast<xreal>(i + 1) * G(i, j);
    lu_solve(G, NG);  // NG = G^{-1} N G
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        xcplx zi{nodes[static_cast<std::size_t>(i)].real(),
                 nodes[static_cast<std::size_t>(i)].imag()};
        xcplx zj{nodes[static_cast<std::size_t>(j)].real(),
                 nodes[static_cast<std::size_t>(j)].imag()};
        xcplx ratio = std::pow(zj / zi, static_cast<xreal>(m * n));
        C(i, j) = -NG(i, j) + NG(i, j) * ratio +
                  (i == j ? xcplx{static_cast<xreal>(m * n), 0.0L} : xcplx{0.0L, 0.0L});
      }
  }

  auto sv = singular_values(C);
  xreal lo = sv[0], hi = sv[0];
  for (xreal s : sv) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return {static_cast<double>(lo), static_cast<double>(hi)};
}

}  // namespace pskit::xprec
