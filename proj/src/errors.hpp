#pragma once

#include <stdexcept>
#include <string>

namespace pskit {

enum class errc {
  invalid_argument,
  domain_violation,
  duplicate_point,
  outside_annulus,
  empty_input,
  degenerate_input,
  exhausted_candidates,
  projection_collision,
  zero_projection,
  bad_order,
  duplicate_nodes,
  zero_node,
  singular_block,
  ill_conditioned,
  insufficient_samples,
  rank_deficient,
  mass_imbalance,
  bad_sampler,
  non_finite,
  parse_error,
  io_error,
};

class error : public std::runtime_error {
public:
  error(errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_argument: return "invalid_argument";
    case errc::domain_violation: return "domain_violation";
    case errc::duplicate_point: return "duplicate_point";
    case errc::outside_annulus: return "outside_annulus";
    case errc::empty_input: return "empty_input";
    case errc::degenerate_input: return "degenerate_input";
    case errc::exhausted_candidates: return "exhausted_candidates";
    case errc::projection_collision: return "projection_collision";
    case errc::zero_projection: return "zero_projection";
    case errc::bad_order: return "bad_order";
    case errc::duplicate_nodes: return "duplicate_nodes";
    case errc::zero_node: return "zero_node";
    case errc::singular_block: return "singular_block";
    case errc::ill_conditioned: return "ill_conditioned";
    case errc::insufficient_samples: return "insufficient_samples";
    case errc::rank_deficient: return "rank_deficient";
    case errc::mass_imbalance: return "mass_imbalance";
    case errc::bad_sampler: return "bad_sampler";
    case errc::non_finite: return "non_finite";
    case errc::parse_error: return "parse_error";
    case errc::io_error: return "io_error";
  }
  return "unknown";
}

}  // namespace pskit
