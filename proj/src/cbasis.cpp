#include "cbasis.hpp"

#include <cmath>
#include <numbers>

namespace pskit::cbasis {

namespace {

// A few ulps of slack so sampling exactly on |z| = 1 never trips the guard.
constexpr double kDomainSlack = 1e-12;

void check_domain(cplx z, cplx z_k) {
  if (std::abs(z) < 1.0 - kDomainSlack)
    fail(errc::domain_violation, "evaluation point must satisfy |z| >= 1");
  if (std::abs(z_k) >= 1.0) fail(errc::domain_violation, "source must satisfy |z_k| < 1");
}

}  // namespace

ExpansionSpec::ExpansionSpec(geometry::SourceConfig sources, std::vector<cplx> log_strengths,
                             std::vector<PoleTerm> pole_terms)
    : sources_(std::move(sources)),
      log_strengths_(std::move(log_strengths)),
      pole_terms_(std::move(pole_terms)) {
  if (sources_.dim() != 2) fail(errc::invalid_argument, "complex expansion needs 2D sources");
  if (!log_strengths_.empty() && log_strengths_.size() != sources_.size())
    fail(errc::invalid_argument, "log strengths must be absent or one per source");
  for (const auto& t : pole_terms_) {
    if (t.k >= sources_.size()) fail(errc::invalid_argument, "pole term references missing source");
    if (t.order < 1) fail(errc::bad_order, "pole order must be >= 1");
    if (!std::isfinite(t.strength.real()) || !std::isfinite(t.strength.imag()))
      fail(errc::non_finite, "pole strength must be finite");
  }
  for (const auto& s : log_strengths_)
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      fail(errc::non_finite, "log strength must be finite");
}

bool ExpansionSpec::has_logs() const {
  for (const auto& s : log_strengths_)
    if (s != cplx{0.0, 0.0}) return true;
  return false;
}

int ExpansionSpec::max_order() const {
  int m = 0;
  for (const auto& t : pole_terms_) m = std::max(m, t.order);
  return m;
}

cplx ExpansionSpec::b0() const {
  cplx s{0.0, 0.0};
  for (const auto& t : pole_terms_)
    if (t.order == 1) s += t.strength;
  return s;
}

ExpansionSpec ExpansionSpec::negated() const {
  std::vector<cplx> logs = log_strengths_;
  for (auto& s : logs) s = -s;
  std::vector<PoleTerm> poles = pole_terms_;
  for (auto& t : poles) t.strength = -t.strength;
  return ExpansionSpec(sources_, std::move(logs), std::move(poles));
}

cplx psi(cplx z, cplx z_k) {
  check_domain(z, z_k);
  // Single principal log of 1/(1 - z_k/z); Re{1 - z_k/z} > 0 keeps the
  // argument inside (-pi/2, pi/2), so no branch cut is crossed for |z| >= 1.
  return -std::log(1.0 - z_k / z);
}

cplx pole(cplx z, cplx z_k, int m) {
  if (m < 1) fail(errc::bad_order, "pole order must be >= 1");
  check_domain(z, z_k);
  return std::pow(z - z_k, -m);
}

cplx eval_expansion(const ExpansionSpec& spec, cplx z) {
  if (std::abs(z) < 1.0 - kDomainSlack)
    fail(errc::domain_violation, "evaluation point must satisfy |z| >= 1");
  cplx acc{0.0, 0.0};
  const auto& logs = spec.log_strengths();
  for (std::size_t k = 0; k < logs.size(); ++k)
    if (logs[k] != cplx{0.0, 0.0}) acc += logs[k] * psi(z, spec.sources().node(k));
  for (const auto& t : spec.pole_terms())
    acc += t.strength * pole(z, spec.sources().node(t.k), t.order);
  return acc;
}

double binomial_pole_coefficient(int m, int n) {
  if (m < 1 || n < 0) fail(errc::bad_order, "require m >= 1 and n >= 0");
  // (m+n-1)! / (n! (m-1)!) as a running product of (m+j-1)/j.
  double s = 1.0;
  for (int j = 1; j <= n; ++j) s *= static_cast<double>(m + j - 1) / static_cast<double>(j);
  return s;
}

SeriesCoefficients series_coefficients(const ExpansionSpec& spec, int n_max) {
  if (n_max < 1) fail(errc::invalid_argument, "n_max must be >= 1");
  SeriesCoefficients out;
  out.b.assign(static_cast<std::size_t>(n_max), cplx{0.0, 0.0});
  const auto& logs = spec.log_strengths();
  for (std::size_t k = 0; k < logs.size(); ++k) {
    if (logs[k] == cplx{0.0, 0.0}) continue;
    cplx zk = spec.sources().node(k);
    cplx p = zk;
    for (int j = 1; j <= n_max; ++j, p *= zk) out.b[j - 1] += logs[k] * p / static_cast<double>(j);
  }
  for (const auto& t : spec.pole_terms()) {
    cplx zk = spec.sources().node(t.k);
    for (int j = t.order; j <= n_max; ++j)
      out.b[j - 1] +=
          binomial_pole_coefficient(t.order, j - t.order) * std::pow(zk, j - t.order) * t.strength;
  }
  return out;
}

cplx eval_series(const SeriesCoefficients& coeffs, cplx z) {
  // Horner in 1/z.
  cplx w = 1.0 / z;
  cplx acc{0.0, 0.0};
  for (auto it = coeffs.b.rbegin(); it != coeffs.b.rend(); ++it) acc = (acc + *it) * w;
  return acc;
}

int truncation_order(double rho, double r, double rel_tol, int poly_degree) {
  if (!(0.0 < rho && rho < r)) fail(errc::invalid_argument, "need 0 < rho < r");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) fail(errc::invalid_argument, "rel_tol in (0,1)");
  if (poly_degree < 0) poly_degree = 0;
  int n = static_cast<int>(std::ceil(std::log(rel_tol) / std::log(rho / r)));
  // order-m poles carry coefficients growing like j^{m-1}; push the cutoff
  // until the polynomial factor is absorbed by the geometric decay
  while (n < 100000 &&
         std::pow(static_cast<double>(n), poly_degree) * std::pow(rho / r, n) > rel_tol)
    ++n;
  return n;
}

double verify_branch_free(cplx z_k, double radius, int samples) {
  if (std::abs(z_k) >= 1.0 || radius < 1.0)
    fail(errc::domain_violation, "need |z_k| < 1 <= radius");
  if (samples < 8) fail(errc::invalid_argument, "need at least 8 samples");
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(samples);
    cplx z = std::polar(radius, theta);
    worst = std::max(worst, std::abs(psi(z, z_k).imag()));
  }
  return worst;
}

}  // namespace pskit::cbasis
