#include "probe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "errors.hpp"
#include "nelder_mead.hpp"
#include "rng.hpp"
#include "xprec.hpp"

namespace pskit::probe {

namespace {

constexpr double kAnnulusLo = 0.05;
constexpr double kAnnulusHi = 0.95;
constexpr double kBoundaryLo = 0.90;
constexpr double kMinSep = 1e-3;
constexpr double kClusterRadius = 1e-2;
constexpr double kClusterSep = 1e-5;

cplx uniform_in_annulus(std::mt19937_64& eng, double lo, double hi) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  // area-uniform radius
  double r = std::sqrt(lo * lo + (hi * hi - lo * lo) * uni(eng));
  double th = 2.0 * std::numbers::pi * uni(eng);
  return std::polar(r, th);
}

std::vector<cplx> sample_separated(std::mt19937_64& eng, int n_k, double lo, double hi,
                                   double sep) {
  std::vector<cplx> nodes;
  nodes.reserve(n_k);
  int attempts = 0;
  while ((int)nodes.size() < n_k) {
    if (++attempts > 100000) fail(errc::bad_sampler, "separation constraint unsatisfiable");
    cplx z = uniform_in_annulus(eng, lo, hi);
    bool ok = true;
    for (const cplx& w : nodes)
      if (std::abs(z - w) < sep) { ok = false; break; }
    if (ok) nodes.push_back(z);
  }
  return nodes;
}

}  // namespace

Sampler parse_sampler(const std::string& name) {
  if (name == "annulus") return Sampler::annulus_uniform;
  if (name == "near-boundary") return Sampler::near_boundary;
  if (name == "clustered") return Sampler::clustered;
  fail(errc::parse_error, "unknown sampler: " + name);
}

std::string sampler_name(Sampler s) {
  switch (s) {
    case Sampler::annulus_uniform: return "annulus";
    case Sampler::near_boundary: return "near-boundary";
    case Sampler::clustered: return "clustered";
  }
  return "?";
}

std::vector<cplx> sample_nodes(Sampler s, int n_k, std::uint64_t seed) {
  auto eng = rng::engine(seed);
  switch (s) {
    case Sampler::annulus_uniform:
      return sample_separated(eng, n_k, kAnnulusLo, kAnnulusHi, kMinSep);
    case Sampler::near_boundary:
      return sample_separated(eng, n_k, kBoundaryLo, kAnnulusHi, kMinSep);
    case Sampler::clustered: {
      // All nodes inside a small disk around one random center; keeps the
      // center's disk inside the annulus.
      auto eng2 = rng::engine(seed);
      cplx c = uniform_in_annulus(eng2, kAnnulusLo + kClusterRadius, kAnnulusHi - kClusterRadius);
      std::vector<cplx> nodes;
      std::uniform_real_distribution<double> uni(0.0, 1.0);
      int attempts = 0;
      while ((int)nodes.size() < n_k) {
        if (++attempts > 100000) fail(errc::bad_sampler, "cluster too tight for node count");
        double r = kClusterRadius * std::sqrt(uni(eng2));
        double th = 2.0 * std::numbers::pi * uni(eng2);
        cplx z = c + std::polar(r, th);
        bool ok = true;
        for (const cplx& w : nodes)
          if (std::abs(z - w) < kClusterSep) { ok = false; break; }
        if (ok) nodes.push_back(z);
      }
      return nodes;
    }
  }
  fail(errc::bad_sampler, "unreachable sampler");
}

void Histogram::add(double rel_sigma) {
  double l = std::log10(std::max(rel_sigma, 1e-300));
  int b = (int)std::floor(-l);  // (-1,0] -> 0, (-2,-1] -> 1, ...
  b = std::clamp(b, 0, buckets - 1);
  counts[b]++;
}

namespace {

ProbeRecord evaluate_nodes(const std::vector<cplx>& nodes, int m, std::uint64_t seed,
                           const ProbeOptions& opt) {
  ProbeRecord rec;
  rec.n_k = (int)nodes.size();
  rec.m = m;
  rec.seed = seed;
  rec.nodes = nodes;
  matrices::CMatrixOptions copt;
  copt.max_nodes = opt.max_nodes;
  copt.cond_threshold = opt.cond_threshold;
  auto bundle = m == 1 ? matrices::c_matrix(nodes, copt) : matrices::c_m_matrix(nodes, m, copt);
  rec.sigma_min = bundle.sigma_min;
  rec.sigma_max = bundle.sigma_max;
  rec.cond_G = bundle.cond_G;
  rec.flagged = bundle.flagged;
  double rel = rec.sigma_max > 0 ? rec.sigma_min / rec.sigma_max : 0.0;
  if (rec.flagged || rel < opt.recheck_threshold) {
    auto sp = xprec::c_sigma_extended(nodes, m == 1 ? 0 : m);
    rec.extended_checked = true;
    rec.sigma_min_extended = sp.sigma_min;
  }
  return rec;
}

void fold(ProbeReport& rep, const ProbeRecord& rec) {
  rep.trials++;
  if (rec.flagged) rep.flagged_count++;
  double rel = rec.sigma_max > 0 ? rec.sigma_min / rec.sigma_max : 0.0;
  rep.histogram.add(rel);
  if (rep.trials == 1 || rec.sigma_min < rep.min_sigma_min) {
    rep.min_sigma_min = rec.sigma_min;
    rep.min_rel_sigma = rel;
    rep.argmin_nodes = rec.nodes;
  }
}

}  // namespace

ProbeReport probe_c(int n_k, int trials, std::uint64_t seed, const ProbeOptions& opt,
                    const RecordSink& sink) {
  if (n_k < 1 || trials < 1) fail(errc::domain_violation, "probe needs n_k >= 1, trials >= 1");
  ProbeReport rep;
  rep.target = opt.m == 1 ? "C" : "C_" + std::to_string(opt.m);
  rep.sampler = sampler_name(opt.sampler);
  rep.n_k = n_k;
  rep.m = opt.m;
  rep.seed = seed;
  for (int t = 0; t < trials; ++t) {
    std::uint64_t ts = rng::trial_seed(seed, (std::uint64_t)t);
    auto nodes = sample_nodes(opt.sampler, n_k, ts);
    ProbeRecord rec = evaluate_nodes(nodes, opt.m, ts, opt);
    rec.master_seed = seed;
    rec.sampler = rep.sampler;
    fold(rep, rec);
    if (sink) sink(rec);
  }
  return rep;
}

ProbeReport probe_blocks(int n_k, const std::set<matrices::Kind>& kinds, int trials,
                         std::uint64_t seed, const ProbeOptions& opt, const RecordSink& sink) {
  if (n_k < 1 || trials < 1) fail(errc::domain_violation, "probe needs n_k >= 1, trials >= 1");
  ProbeReport rep;
  rep.target = "blocks:";
  for (auto k : kinds) rep.target += matrices::kind_name(k) + std::string(",");
  if (!kinds.empty()) rep.target.pop_back();
  rep.sampler = sampler_name(opt.sampler);
  rep.n_k = n_k;
  rep.m = 0;
  rep.seed = seed;
  for (int t = 0; t < trials; ++t) {
    std::uint64_t ts = rng::trial_seed(seed, (std::uint64_t)t);
    auto nodes = sample_nodes(opt.sampler, n_k, ts);
    auto sys = matrices::mixed_block_system(nodes, kinds, n_k * (int)kinds.size());
    auto info = matrices::svd_info(sys.entries);
    ProbeRecord rec;
    rec.n_k = n_k;
    rec.m = 0;
    rec.seed = ts;
    rec.master_seed = seed;
    rec.sampler = rep.sampler;
    rec.nodes = nodes;
    rec.sigma_min = info.sigma_min;
    rec.sigma_max = info.sigma_max;
    rec.cond_G = matrices::condition_number(matrices::vandermonde(nodes, n_k).entries);
    rec.flagged = rec.cond_G > opt.cond_threshold;
    fold(rep, rec);
    if (sink) sink(rec);
  }
  return rep;
}

ProbeRecord minimize_sigma_min(int n_k, int restarts, std::uint64_t seed, int budget,
                               const ProbeOptions& opt) {
  if (n_k < 1 || restarts < 1) fail(errc::domain_violation, "need n_k >= 1, restarts >= 1");
  auto objective = [&](const std::vector<double>& x) {
    std::vector<cplx> nodes(n_k);
    double penalty = 0.0;
    for (int k = 0; k < n_k; ++k) {
      nodes[k] = {x[2 * k], x[2 * k + 1]};
      double r = std::abs(nodes[k]);
      if (r < kAnnulusLo) penalty += (kAnnulusLo - r) * 10.0;
      if (r > kAnnulusHi) penalty += (r - kAnnulusHi) * 10.0;
    }
    for (int i = 0; i < n_k; ++i)
      for (int j = i + 1; j < n_k; ++j) {
        double d = std::abs(nodes[i] - nodes[j]);
        if (d < kMinSep) penalty += (kMinSep - d) * 100.0;
      }
    if (penalty > 0) return penalty + 1.0;
    matrices::CMatrixOptions copt;
    copt.cond_threshold = opt.cond_threshold;
    copt.max_nodes = opt.max_nodes;
    try {
      auto bundle =
          opt.m == 1 ? matrices::c_matrix(nodes, copt) : matrices::c_m_matrix(nodes, opt.m, copt);
      return bundle.sigma_max > 0 ? bundle.sigma_min / bundle.sigma_max : 1.0;
    } catch (const error&) {
      return 1.0;  // degenerate point; steer away
    }
  };

  double best_val = std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  for (int r = 0; r < restarts; ++r) {
    std::uint64_t ts = rng::trial_seed(seed, 0x9e3779b9u + (std::uint64_t)r);
    auto nodes = sample_nodes(opt.sampler, n_k, ts);
    std::vector<double> x0(2 * n_k);
    for (int k = 0; k < n_k; ++k) {
      x0[2 * k] = nodes[k].real();
      x0[2 * k + 1] = nodes[k].imag();
    }
    optim::NelderMeadOptions nm;
    nm.max_evals = budget / restarts > 10 ? budget / restarts : 10;
    auto res = optim::nelder_mead(objective, x0, nm);
    if (res.value < best_val) {
      best_val = res.value;
      best_x = res.x;
    }
  }

  std::vector<cplx> nodes(n_k);
  for (int k = 0; k < n_k; ++k) nodes[k] = {best_x[2 * k], best_x[2 * k + 1]};
  ProbeOptions eopt = opt;
  eopt.recheck_threshold = std::max(opt.recheck_threshold, 1e-8);
  return evaluate_nodes(nodes, opt.m, seed, eopt);
}

ProbeReport aggregate(const std::vector<ProbeRecord>& records) {
  ProbeReport rep;
  if (records.empty()) fail(errc::domain_violation, "no records to aggregate");
  rep.n_k = records.front().n_k;
  rep.m = records.front().m;
  rep.seed = records.front().master_seed;
  rep.sampler = records.front().sampler;
  rep.target = rep.m <= 1 ? "C" : "C_" + std::to_string(rep.m);
  for (const auto& rec : records) fold(rep, rec);
  return rep;
}

}  // namespace pskit::probe
