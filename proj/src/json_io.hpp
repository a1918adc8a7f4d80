#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cbasis.hpp"
#include "lab.hpp"
#include "probe.hpp"
#include "rbasis.hpp"
#include "reduction.hpp"

namespace pskit::io {

using nlohmann::json;

// Throws pskit::error(parse_error) on malformed input. JSON indices ("k")
// are 1-based; in-memory indices are 0-based.

json config_to_json(const geometry::SourceConfig& cfg);
geometry::SourceConfig config_from_json(const json& j);

json spec_to_json(const cbasis::ExpansionSpec& spec);
cbasis::ExpansionSpec spec_from_json(const json& j);

json realspec2_to_json(const rbasis::RealSpec2& spec);
rbasis::RealSpec2 realspec2_from_json(const json& j);

json realspec3_to_json(const rbasis::RealSpec3& spec);
rbasis::RealSpec3 realspec3_from_json(const json& j);

json verdict_to_json(const lab::IndependenceVerdict& v);
lab::IndependenceVerdict verdict_from_json(const json& j);

json probe_record_to_json(const probe::ProbeRecord& rec);
probe::ProbeRecord probe_record_from_json(const json& j);

json probe_report_to_json(const probe::ProbeReport& rep);

json reduce_report_to_json(const reduction::ReduceReport& rep);

json parse(const std::string& text);         // wraps json::parse
json load_file(const std::string& path);     // io_error on missing file
void save_file(const std::string& path, const json& j);

/// Matrix as CSV with interleaved re,im columns (2*cols values per row).
std::string matrix_to_csv(const Eigen::MatrixXcd& M);

}  // namespace pskit::io
