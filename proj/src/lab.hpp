#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cbasis.hpp"
#include "matrices.hpp"

namespace pskit::lab {

using cplx = std::complex<double>;

/// Expansion kind driving moment/Gram/recovery tests.
struct ExpKind {
  enum class Tag { log, pole, mixed12, logpole };
  Tag tag = Tag::pole;
  int order = 1;  // pole order when tag == pole

  static ExpKind parse(const std::string& name);  // "log", "poleM", "mixed12", "log-pole"
  std::string name() const;
  bool theorem_backed() const { return tag == Tag::log || tag == Tag::pole; }
  std::size_t basis_count(std::size_t n_k) const;
};

struct LabOptions {
  double singular_rel_threshold = 1e-10;  // sigma_min vs sigma_max
  double recovery_tolerance = 1e-8;
  double gram_radius = 2.0;
  int gram_samples_factor = 8;  // samples = factor * basis count
};

struct IndependenceVerdict {
  std::string kind;
  int n_k = 0;
  std::uint64_t seed = 0;
  double sigma_min_moment = 0.0;
  double sigma_max_moment = 0.0;
  double sigma_min_gram = 0.0;
  double recovered_error = 0.0;
  bool independent = false;  // false means "flagged", never "dependent"
};

/// sigma extremes of the square moment system for the kind.
matrices::SvdInfo moment_rank_test(const std::vector<cplx>& nodes, const ExpKind& kind);

/// sigma_min of the Gram matrix of the kind's basis functions sampled on a
/// circle of the given radius.
double sampled_gram_test(const std::vector<cplx>& nodes, const ExpKind& kind, int n_samples,
                         double radius);

struct Recovery {
  std::vector<cplx> recovered;
  double max_error = 0.0;
  bool rank_deficient = false;
  double cond_design = 0.0;
};

/// Least-squares refit of a spec's own basis from sampled exterior values;
/// with noise = 0 the strengths round-trip when the basis is independent.
Recovery recover_coefficients(const cbasis::ExpansionSpec& spec, int n_samples, double radius,
                              double noise, std::uint64_t seed);

/// Random strengths of the given kind over fixed nodes; used by
/// verification sweeps.
cbasis::ExpansionSpec random_spec(const ExpKind& kind, const std::vector<cplx>& nodes,
                                  std::uint64_t seed);
std::vector<cplx> random_nodes(int n_k, std::uint64_t seed, double r_min = 0.05,
                               double r_max = 0.95, double min_sep = 1e-3);

/// Full verdict for one seeded trial: moment + Gram + zero-noise recovery.
IndependenceVerdict run_trial(const ExpKind& kind, int n_k, std::uint64_t seed,
                              const LabOptions& opt = {});

std::vector<IndependenceVerdict> run_trials(const ExpKind& kind, int n_k, int trials,
                                            std::uint64_t master_seed, const LabOptions& opt = {});

}  // namespace pskit::lab
