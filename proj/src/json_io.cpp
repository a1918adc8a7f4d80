#include "json_io.hpp"

#include <fstream>
#include <sstream>

namespace pskit::io {

namespace {

using cplx = std::complex<double>;

json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) fail(errc::parse_error, "expected [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

double get_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

}  // namespace

json config_to_json(const geometry::SourceConfig& cfg) {
  json pts = json::array();
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    const auto& p = cfg.point(k);
    if (cfg.dim() == 2)
      pts.push_back(json::array({p[0], p[1]}));
    else
      pts.push_back(json::array({p[0], p[1], p[2]}));
  }
  return {{"dim", cfg.dim()},
          {"points", pts},
          {"r_min", cfg.r_min()},
          {"r_max", cfg.r_max()},
          {"min_sep", cfg.min_sep()}};
}

geometry::SourceConfig config_from_json(const json& j) {
  if (!j.is_object() || !j.contains("points"))
    fail(errc::parse_error, "source config needs a points array");
  int dim = j.contains("dim") ? j.at("dim").get<int>() : 2;
  double r_min = get_or(j, "r_min", geometry::SourceConfig::default_r_min);
  double r_max = get_or(j, "r_max", geometry::SourceConfig::default_r_max);
  double min_sep = get_or(j, "min_sep", geometry::SourceConfig::default_min_sep);
  const json& pts = j.at("points");
  if (!pts.is_array() || pts.empty()) fail(errc::parse_error, "points must be a non-empty array");
  if (dim == 2) {
    std::vector<geometry::Vec2> v;
    for (const auto& p : pts) {
      if (!p.is_array() || p.size() != 2) fail(errc::parse_error, "2D point must be [x, y]");
      v.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return geometry::SourceConfig::validate2(std::move(v), r_min, r_max, min_sep);
  }
  if (dim == 3) {
    std::vector<geometry::Vec3> v;
    for (const auto& p : pts) {
      if (!p.is_array() || p.size() != 3) fail(errc::parse_error, "3D point must be [x, y, z]");
      v.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
    }
    return geometry::SourceConfig::validate3(std::move(v), r_min, r_max, min_sep);
  }
  fail(errc::parse_error, "dim must be 2 or 3");
}

json spec_to_json(const cbasis::ExpansionSpec& spec) {
  json j = {{"sources", config_to_json(spec.sources())}};
  if (spec.has_logs()) {
    json logs = json::array();
    for (const auto& r : spec.log_strengths()) logs.push_back(cplx_to_json(r));
    j["log"] = logs;
  }
  if (!spec.pole_terms().empty()) {
    json poles = json::array();
    for (const auto& t : spec.pole_terms())
      poles.push_back({{"k", t.k + 1},
                       {"m", t.order},
                       {"re", t.strength.real()},
                       {"im", t.strength.imag()}});
    j["poles"] = poles;
  }
  return j;
}

cbasis::ExpansionSpec spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("sources"))
    fail(errc::parse_error, "expansion spec needs a sources object");
  auto cfg = config_from_json(j.at("sources"));
  std::vector<cplx> logs;
  if (j.contains("log")) {
    for (const auto& r : j.at("log")) logs.push_back(cplx_from_json(r));
  }
  std::vector<cbasis::PoleTerm> poles;
  if (j.contains("poles")) {
    for (const auto& p : j.at("poles")) {
      if (!p.is_object()) fail(errc::parse_error, "pole term must be an object");
      int k = p.at("k").get<int>();
      if (k < 1 || (std::size_t)k > cfg.size())
        fail(errc::parse_error, "pole term k out of range");
      poles.push_back({(std::size_t)(k - 1), p.at("m").get<int>(),
                       {p.at("re").get<double>(), p.at("im").get<double>()}});
    }
  }
  return cbasis::ExpansionSpec(std::move(cfg), std::move(logs), std::move(poles));
}

json realspec2_to_json(const rbasis::RealSpec2& spec) {
  json j = {{"sources", config_to_json(spec.sources())}};
  if (!spec.masses().empty()) j["masses"] = spec.masses();
  if (!spec.dipoles().empty()) {
    json d = json::array();
    for (const auto& v : spec.dipoles()) d.push_back(json::array({v[0], v[1]}));
    j["dipoles"] = d;
  }
  if (!spec.multipoles().empty()) {
    json m = json::array();
    for (const auto& t : spec.multipoles())
      m.push_back({{"k", t.k + 1}, {"n", t.order}, {"a", t.a}, {"b", t.b}});
    j["multipoles"] = m;
  }
  return j;
}

rbasis::RealSpec2 realspec2_from_json(const json& j) {
  if (!j.is_object() || !j.contains("sources"))
    fail(errc::parse_error, "real spec needs a sources object");
  auto cfg = config_from_json(j.at("sources"));
  std::vector<double> masses;
  if (j.contains("masses")) masses = j.at("masses").get<std::vector<double>>();
  std::vector<geometry::Vec2> dipoles;
  if (j.contains("dipoles"))
    for (const auto& v : j.at("dipoles")) {
      if (!v.is_array() || v.size() != 2) fail(errc::parse_error, "2D dipole must be [x, y]");
      dipoles.push_back({v[0].get<double>(), v[1].get<double>()});
    }
  std::vector<rbasis::MultipoleTerm> mult;
  if (j.contains("multipoles"))
    for (const auto& t : j.at("multipoles")) {
      int k = t.at("k").get<int>();
      if (k < 1 || (std::size_t)k > cfg.size())
        fail(errc::parse_error, "multipole term k out of range");
      mult.push_back({(std::size_t)(k - 1), t.at("n").get<int>(), t.at("a").get<double>(),
                      t.at("b").get<double>()});
    }
  return rbasis::RealSpec2(std::move(cfg), std::move(masses), std::move(dipoles),
                           std::move(mult));
}

json realspec3_to_json(const rbasis::RealSpec3& spec) {
  json j = {{"sources", config_to_json(spec.sources())}};
  if (!spec.masses().empty()) j["masses"] = spec.masses();
  if (!spec.dipoles().empty()) {
    json d = json::array();
    for (const auto& v : spec.dipoles()) d.push_back(json::array({v[0], v[1], v[2]}));
    j["dipoles"] = d;
  }
  return j;
}

rbasis::RealSpec3 realspec3_from_json(const json& j) {
  if (!j.is_object() || !j.contains("sources"))
    fail(errc::parse_error, "real spec needs a sources object");
  auto cfg = config_from_json(j.at("sources"));
  if (cfg.dim() != 3) fail(errc::parse_error, "3D spec needs dim = 3 sources");
  std::vector<double> masses;
  if (j.contains("masses")) masses = j.at("masses").get<std::vector<double>>();
  std::vector<geometry::Vec3> dipoles;
  if (j.contains("dipoles"))
    for (const auto& v : j.at("dipoles")) {
      if (!v.is_array() || v.size() != 3) fail(errc::parse_error, "3D dipole must be [x, y, z]");
      dipoles.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
    }
  return rbasis::RealSpec3(std::move(cfg), std::move(masses), std::move(dipoles));
}

json verdict_to_json(const lab::IndependenceVerdict& v) {
  return {{"kind", v.kind},
          {"n_k", v.n_k},
          {"seed", v.seed},
          {"sigma_min_moment", v.sigma_min_moment},
          {"sigma_max_moment", v.sigma_max_moment},
          {"sigma_min_gram", v.sigma_min_gram},
          {"recovered_error", v.recovered_error},
          {"verdict", v.independent ? "independent" : "flagged"}};
}

lab::IndependenceVerdict verdict_from_json(const json& j) {
  lab::IndependenceVerdict v;
  v.kind = j.at("kind").get<std::string>();
  v.n_k = j.at("n_k").get<int>();
  v.seed = j.at("seed").get<std::uint64_t>();
  v.sigma_min_moment = j.at("sigma_min_moment").get<double>();
  v.sigma_max_moment = j.at("sigma_max_moment").get<double>();
  v.sigma_min_gram = j.at("sigma_min_gram").get<double>();
  v.recovered_error = j.at("recovered_error").get<double>();
  v.independent = j.at("verdict").get<std::string>() == "independent";
  return v;
}

json probe_record_to_json(const probe::ProbeRecord& rec) {
  json nodes = json::array();
  for (const auto& z : rec.nodes) nodes.push_back(cplx_to_json(z));
  json j = {{"n_k", rec.n_k},
            {"m", rec.m},
            {"seed", rec.seed},
            {"master_seed", rec.master_seed},
            {"sampler", rec.sampler},
            {"nodes", nodes},
            {"sigma_min", rec.sigma_min},
            {"sigma_max", rec.sigma_max},
            {"cond_G", rec.cond_G},
            {"flagged", rec.flagged}};
  if (rec.extended_checked) j["sigma_min_extended"] = rec.sigma_min_extended;
  return j;
}

probe::ProbeRecord probe_record_from_json(const json& j) {
  probe::ProbeRecord rec;
  rec.n_k = j.at("n_k").get<int>();
  rec.m = j.at("m").get<int>();
  rec.seed = j.at("seed").get<std::uint64_t>();
  rec.master_seed = j.value("master_seed", std::uint64_t{0});
  rec.sampler = j.value("sampler", std::string{});
  for (const auto& z : j.at("nodes")) rec.nodes.push_back(cplx_from_json(z));
  rec.sigma_min = j.at("sigma_min").get<double>();
  rec.sigma_max = j.at("sigma_max").get<double>();
  rec.cond_G = j.at("cond_G").get<double>();
  rec.flagged = j.at("flagged").get<bool>();
  if (j.contains("sigma_min_extended")) {
    rec.extended_checked = true;
    rec.sigma_min_extended = j.at("sigma_min_extended").get<double>();
  }
  return rec;
}

json probe_report_to_json(const probe::ProbeReport& rep) {
  json nodes = json::array();
  for (const auto& z : rep.argmin_nodes) nodes.push_back(cplx_to_json(z));
  return {{"target", rep.target},
          {"sampler", rep.sampler},
          {"n_k", rep.n_k},
          {"m", rep.m},
          {"seed", rep.seed},
          {"trials", rep.trials},
          {"flagged_count", rep.flagged_count},
          {"min_sigma_min", rep.min_sigma_min},
          {"min_rel_sigma", rep.min_rel_sigma},
          {"argmin_nodes", nodes},
          {"histogram_log10_rel_sigma", rep.histogram.counts}};
}

json reduce_report_to_json(const reduction::ReduceReport& rep) {
  return {{"plane_spec", realspec2_to_json(rep.spec2)},
          {"axis", json::array({rep.axis[0], rep.axis[1], rep.axis[2]})},
          {"defect", rep.defect},
          {"z_defect", rep.z_defect},
          {"tail_estimate", rep.tail_estimate},
          {"L", rep.L},
          {"probe_radius", rep.probe_radius},
          {"per_probe", rep.per_probe}};
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(errc::parse_error, e.what());
  }
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void save_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(errc::io_error, "cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) fail(errc::io_error, "write failed: " + path);
}

std::string matrix_to_csv(const Eigen::MatrixXcd& M) {
  std::ostringstream ss;
  ss.precision(17);
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j > 0) ss << ",";
      ss << M(i, j).real() << "," << M(i, j).imag();
    }
    ss << "\n";
  }
  return ss.str();
}

}  // namespace pskit::io
