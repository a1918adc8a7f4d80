#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "geometry.hpp"

namespace pskit::cbasis {

using cplx = std::complex<double>;

/// Mixed expansion over one 2D source configuration: per-source logarithmic
/// strengths plus pole strengths of arbitrary finite order.
struct PoleTerm {
  std::size_t k;  // source index, 0-based
  int order;      // m >= 1
  cplx strength;
};

class ExpansionSpec {
public:
  ExpansionSpec(geometry::SourceConfig sources, std::vector<cplx> log_strengths,
                std::vector<PoleTerm> pole_terms);

  const geometry::SourceConfig& sources() const { return sources_; }
  const std::vector<cplx>& log_strengths() const { return log_strengths_; }
  const std::vector<PoleTerm>& pole_terms() const { return pole_terms_; }
  bool has_logs() const;
  int max_order() const;

  // Sum of simple-pole strengths; the z^0 moment the mixed-system derivation
  // discards. Reported, never asserted zero.
  cplx b0() const;

  ExpansionSpec negated() const;

private:
  geometry::SourceConfig sources_;
  std::vector<cplx> log_strengths_;  // empty or size N_k
  std::vector<PoleTerm> pole_terms_;
};

/// psi_k(z) = ln(z / (z - z_k)), principal branch of log(1/(1 - z_k/z)).
/// Branch-free for |z| >= 1 > |z_k|; |Im psi| < pi/2 there.
cplx psi(cplx z, cplx z_k);

/// 1/(z - z_k)^m for m >= 1.
cplx pole(cplx z, cplx z_k, int m);

cplx eval_expansion(const ExpansionSpec& spec, cplx z);

/// S_{m,0} = 1, S_{m,n} = (m+n-1)! / (n! (m-1)!), computed multiplicatively.
double binomial_pole_coefficient(int m, int n);

struct SeriesCoefficients {
  std::vector<cplx> b;  // b[j-1] multiplies z^{-j}
};

/// b_j = sum_k [ rho_k z_k^j / j + sum_m S_{m,j-m} z_k^{j-m} strength ].
SeriesCoefficients series_coefficients(const ExpansionSpec& spec, int n_max);

cplx eval_series(const SeriesCoefficients& coeffs, cplx z);

/// Truncation order making the tail bound fall below rel_tol for sources of
/// radius <= rho evaluated at |z| = r. poly_degree accounts for the j^d
/// coefficient growth of order-(d+1) poles; 0 is the plain geometric bound.
int truncation_order(double rho, double r, double rel_tol, int poly_degree = 0);

/// Max |Im psi(radius e^{i theta}, z_k)| over `samples` uniformly spaced
/// angles. The branch-free bound asserts this stays below pi/2.
double verify_branch_free(cplx z_k, double radius, int samples);

}  // namespace pskit::cbasis
