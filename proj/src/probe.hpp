#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "matrices.hpp"

namespace pskit::probe {

using cplx = std::complex<double>;

enum class Sampler { annulus_uniform, near_boundary, clustered };
Sampler parse_sampler(const std::string& name);
std::string sampler_name(Sampler s);

/// One conjecture trial: nodes, sigma extremes of C (or C_m, or a block
/// system), conditioning of G, and the deriving seed. Reproducible from
/// (parameters, seed) alone.
struct ProbeRecord {
  int n_k = 0;
  int m = 1;
  std::uint64_t seed = 0;         // per-trial seed
  std::uint64_t master_seed = 0;  // sweep seed; lets aggregate() rebuild the report
  std::string sampler;
  std::vector<cplx> nodes;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double cond_G = 0.0;
  bool flagged = false;           // cond(G) past the precision guard
  bool extended_checked = false;  // long-double recheck ran
  double sigma_min_extended = 0.0;
};

struct Histogram {
  // buckets by floor(-log10(sigma_min/sigma_max)): bucket b holds relative
  // sigmas in [10^-(b+1), 10^-b); everything at or below 1e-14 lands in the
  // last bucket.
  static constexpr int buckets = 15;
  std::vector<int> counts = std::vector<int>(buckets, 0);
  void add(double rel_sigma);
};

struct ProbeReport {
  std::string target;  // "C", "C_m", or block-system layout
  std::string sampler;
  int n_k = 0;
  int m = 1;
  std::uint64_t seed = 0;
  int trials = 0;
  int flagged_count = 0;
  double min_sigma_min = 0.0;
  double min_rel_sigma = 0.0;
  std::vector<cplx> argmin_nodes;
  Histogram histogram;
};

struct ProbeOptions {
  int m = 1;  // C_m order; 1 probes C itself
  Sampler sampler = Sampler::annulus_uniform;
  double cond_threshold = 1e12;
  double recheck_threshold = 1e-8;  // relative sigma_min triggering the long-double recheck
  int max_nodes = 12;
};

using RecordSink = std::function<void(const ProbeRecord&)>;

std::vector<cplx> sample_nodes(Sampler s, int n_k, std::uint64_t seed);

/// Monte-Carlo sweep of sigma_min(C) (C_m when opt.m > 1). Purely
/// empirical; nothing asserts positivity.
ProbeReport probe_c(int n_k, int trials, std::uint64_t seed, const ProbeOptions& opt = {},
                    const RecordSink& sink = {});

/// Same sweep over the square truncated mixed block system for the kinds.
ProbeReport probe_blocks(int n_k, const std::set<matrices::Kind>& kinds, int trials,
                         std::uint64_t seed, const ProbeOptions& opt = {},
                         const RecordSink& sink = {});

/// Derivative-free search (simplex + random restarts) for nodes minimizing
/// sigma_min(C); returns the worst record found, extended-precision checked
/// when suspicious.
ProbeRecord minimize_sigma_min(int n_k, int restarts, std::uint64_t seed, int budget,
                               const ProbeOptions& opt = {});

/// Rebuilds a report from persisted records (aggregation is a pure fold).
ProbeReport aggregate(const std::vector<ProbeRecord>& records);

}  // namespace pskit::probe
