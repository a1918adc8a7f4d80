#include "lab.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <numbers>

#include "rng.hpp"

namespace pskit::lab {

ExpKind ExpKind::parse(const std::string& name) {
  if (name == "log") return {Tag::log, 1};
  if (name == "mixed12") return {Tag::mixed12, 1};
  if (name == "log-pole" || name == "logpole") return {Tag::logpole, 1};
  if (name.rfind("pole", 0) == 0 && name.size() > 4) {
    int m = 0;
    for (std::size_t i = 4; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i])))
        fail(errc::parse_error, "unknown expansion kind: " + name);
      m = m * 10 + (name[i] - '0');
    }
    if (m < 1) fail(errc::bad_order, "pole order must be >= 1");
    return {Tag::pole, m};
  }
  fail(errc::parse_error, "unknown expansion kind: " + name);
}

std::string ExpKind::name() const {
  switch (tag) {
    case Tag::log: return "log";
    case Tag::pole: return "pole" + std::to_string(order);
    case Tag::mixed12: return "mixed12";
    case Tag::logpole: return "log-pole";
  }
  return "?";
}

std::size_t ExpKind::basis_count(std::size_t n_k) const {
  return (tag == Tag::mixed12 || tag == Tag::logpole) ? 2 * n_k : n_k;
}

namespace {

// One column-generating function per basis member.
std::vector<std::function<cplx(cplx)>> basis_functions(const std::vector<cplx>& nodes,
                                                       const ExpKind& kind) {
  std::vector<std::function<cplx(cplx)>> fs;
  auto add_logs = [&] {
    for (cplx zk : nodes) fs.push_back([zk](cplx z) { return cbasis::psi(z, zk); });
  };
  auto add_poles = [&](int m) {
    for (cplx zk : nodes) fs.push_back([zk, m](cplx z) { return cbasis::pole(z, zk, m); });
  };
  switch (kind.tag) {
    case ExpKind::Tag::log: add_logs(); break;
    case ExpKind::Tag::pole: add_poles(kind.order); break;
    case ExpKind::Tag::mixed12:
      add_poles(1);
      add_poles(2);
      break;
    case ExpKind::Tag::logpole:
      add_logs();
      add_poles(1);
      break;
  }
  return fs;
}

std::vector<cplx> circle_samples(int n_samples, double radius) {
  std::vector<cplx> zs;
  zs.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    double th = 2.0 * std::numbers::pi * (static_cast<double>(i) + 0.5) / n_samples;
    zs.push_back(std::polar(radius, th));
  }
  return zs;
}

geometry::SourceConfig config_from_nodes(const std::vector<cplx>& nodes) {
  std::vector<geometry::Vec2> pts;
  pts.reserve(nodes.size());
  double rmin = 1.0, rmax = 0.0, sep = 1.0;
  for (const auto& z : nodes) {
    pts.push_back({z.real(), z.imag()});
    rmin = std::min(rmin, std::abs(z));
    rmax = std::max(rmax, std::abs(z));
  }
  for (std::size_t j = 0; j < nodes.size(); ++j)
    for (std::size_t k = j + 1; k < nodes.size(); ++k)
      sep = std::min(sep, std::abs(nodes[j] - nodes[k]));
  return geometry::SourceConfig::validate2(std::move(pts), rmin * (1.0 - 1e-12),
                                           std::min(rmax * (1.0 + 1e-12), 1.0 - 1e-15),
                                           sep * (1.0 - 1e-12));
}

}  // namespace

matrices::SvdInfo moment_rank_test(const std::vector<cplx>& nodes, const ExpKind& kind) {
  int n = static_cast<int>(nodes.size());
  matrices::MomentMatrix M;
  switch (kind.tag) {
    case ExpKind::Tag::log: M = matrices::log_moment_matrix(nodes); break;
    case ExpKind::Tag::pole: M = matrices::pole_moment_block(nodes, kind.order); break;
    case ExpKind::Tag::mixed12:
      M = matrices::mixed_block_system(nodes, {matrices::Kind::pole1, matrices::Kind::pole2},
                                       2 * n);
      break;
    case ExpKind::Tag::logpole: M = matrices::log_pole_block(nodes); break;
  }
  return matrices::svd_info(M.entries);
}

double sampled_gram_test(const std::vector<cplx>& nodes, const ExpKind& kind, int n_samples,
                         double radius) {
  auto fs = basis_functions(nodes, kind);
  if (n_samples < 2 * static_cast<int>(fs.size()))
    fail(errc::insufficient_samples, "need n_samples >= 2 * basis count");
  Eigen::MatrixXcd S(n_samples, static_cast<Eigen::Index>(fs.size()));
  auto zs = circle_samples(n_samples, radius);
  for (int i = 0; i < n_samples; ++i)
    for (std::size_t j = 0; j < fs.size(); ++j)
      S(i, static_cast<Eigen::Index>(j)) = fs[j](zs[static_cast<std::size_t>(i)]);
  Eigen::MatrixXcd gram = S.adjoint() * S;
  return matrices::min_singular_value(gram);
}

Recovery recover_coefficients(const cbasis::ExpansionSpec& spec, int n_samples, double radius,
                              double noise, std::uint64_t seed) {
  if (noise < 0.0) fail(errc::invalid_argument, "noise must be >= 0");
  // Design columns mirror the spec layout: all log columns when any log
  // strength is present, then one column per pole term.
  std::vector<std::function<cplx(cplx)>> fs;
  std::vector<cplx> truth;
  const auto& nodes = spec.sources().nodes();
  if (!spec.log_strengths().empty())
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      cplx zk = nodes[k];
      fs.push_back([zk](cplx z) { return cbasis::psi(z, zk); });
      truth.push_back(spec.log_strengths()[k]);
    }
  for (const auto& t : spec.pole_terms()) {
    cplx zk = nodes[t.k];
    int m = t.order;
    fs.push_back([zk, m](cplx z) { return cbasis::pole(z, zk, m); });
    truth.push_back(t.strength);
  }
  if (fs.empty()) fail(errc::empty_input, "spec has no terms to recover");
  if (n_samples < static_cast<int>(fs.size()))
    fail(errc::insufficient_samples, "need n_samples >= basis count");

  auto zs = circle_samples(n_samples, radius);
  Eigen::MatrixXcd A(n_samples, static_cast<Eigen::Index>(fs.size()));
  Eigen::VectorXcd y(n_samples);
  auto eng = rng::engine(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < n_samples; ++i) {
    cplx z = zs[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < fs.size(); ++j) A(i, static_cast<Eigen::Index>(j)) = fs[j](z);
    cplx val = cbasis::eval_expansion(spec, z);
    if (noise > 0.0) val += cplx{noise * gauss(eng), noise * gauss(eng)};
    y(i) = val;
  }

  Recovery out;
  out.cond_design = matrices::svd_info(A).cond;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
  out.rank_deficient = qr.rank() < static_cast<Eigen::Index>(fs.size());
  Eigen::VectorXcd x = qr.solve(y);
  out.recovered.assign(x.data(), x.data() + x.size());
  for (std::size_t j = 0; j < truth.size(); ++j)
    out.max_error = std::max(out.max_error, std::abs(out.recovered[j] - truth[j]));
  return out;
}

std::vector<cplx> random_nodes(int n_k, std::uint64_t seed, double r_min, double r_max,
                               double min_sep) {
  if (n_k < 1) fail(errc::invalid_argument, "n_k must be >= 1");
  auto eng = rng::engine(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<cplx> nodes;
  int guard = 0;
  while (static_cast<int>(nodes.size()) < n_k) {
    if (++guard > 100000) fail(errc::exhausted_candidates, "node sampling failed to separate");
    double r = std::sqrt(unit(eng) * (r_max * r_max - r_min * r_min) + r_min * r_min);
    double th = 2.0 * std::numbers::pi * unit(eng);
    cplx z = std::polar(r, th);
    bool ok = true;
    for (const auto& w : nodes)
      if (std::abs(z - w) < min_sep) ok = false;
    if (ok) nodes.push_back(z);
  }
  return nodes;
}

cbasis::ExpansionSpec random_spec(const ExpKind& kind, const std::vector<cplx>& nodes,
                                  std::uint64_t seed) {
  auto eng = rng::engine(rng::splitmix64(seed) ^ 0xa5a5a5a5ULL);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  auto draw = [&] {
    // Keep strengths away from zero so round-trips are meaningful.
    cplx c{coef(eng), coef(eng)};
    return std::abs(c) < 0.1 ? c + cplx{0.5, -0.5} : c;
  };
  std::vector<cplx> logs;
  std::vector<cbasis::PoleTerm> poles;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    switch (kind.tag) {
      case ExpKind::Tag::log: logs.push_back(draw()); break;
      case ExpKind::Tag::pole: poles.push_back({k, kind.order, draw()}); break;
      case ExpKind::Tag::mixed12:
        poles.push_back({k, 1, draw()});
        poles.push_back({k, 2, draw()});
        break;
      case ExpKind::Tag::logpole:
        logs.push_back(draw());
        poles.push_back({k, 1, draw()});
        break;
    }
  }
  return cbasis::ExpansionSpec(config_from_nodes(nodes), std::move(logs), std::move(poles));
}

IndependenceVerdict run_trial(const ExpKind& kind, int n_k, std::uint64_t seed,
                              const LabOptions& opt) {
  auto nodes = random_nodes(n_k, seed);
  IndependenceVerdict v;
  v.kind = kind.name();
  v.n_k = n_k;
  v.seed = seed;

  auto moment = moment_rank_test(nodes, kind);
  v.sigma_min_moment = moment.sigma_min;
  v.sigma_max_moment = moment.sigma_max;

  int samples = opt.gram_samples_factor * static_cast<int>(kind.basis_count(nodes.size()));
  v.sigma_min_gram = sampled_gram_test(nodes, kind, samples, opt.gram_radius);

  auto spec = random_spec(kind, nodes, seed);
  auto rec = recover_coefficients(spec, samples, opt.gram_radius, 0.0, seed);
  v.recovered_error = rec.max_error;

  v.independent = moment.sigma_min > opt.singular_rel_threshold * moment.sigma_max &&
                  v.sigma_min_gram > 0.0 && !rec.rank_deficient &&
                  v.recovered_error < opt.recovery_tolerance;
  return v;
}

std::vector<IndependenceVerdict> run_trials(const ExpKind& kind, int n_k, int trials,
                                            std::uint64_t master_seed, const LabOptions& opt) {
  if (trials < 1) fail(errc::invalid_argument, "trials must be >= 1");
  std::vector<IndependenceVerdict> out;
  out.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t)
    out.push_back(run_trial(kind, n_k, rng::trial_seed(master_seed, static_cast<std::uint64_t>(t)),
                            opt));
  return out;
}

}  // namespace pskit::lab
