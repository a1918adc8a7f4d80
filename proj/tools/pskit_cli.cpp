// Command-line front end; all numerical work goes through the C API.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pskit.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFlagged = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitIo = 74;

int exit_code_for(int psk_code) {
  std::string name = psk_error_name(psk_code);
  if (name == "parse_error") return kExitData;
  if (name == "io_error") return kExitIo;
  return 1;
}

[[noreturn]] void die(int psk_code) {
  std::cerr << "error (" << psk_error_name(psk_code) << "): " << psk_last_error() << "\n";
  std::exit(exit_code_for(psk_code));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error (io_error): cannot open " << path << "\n";
    std::exit(kExitIo);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error (io_error): cannot write " << out_path << "\n";
    std::exit(kExitIo);
  }
  out << text;
}

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { psk_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

psk_spec* parse_spec_file(const std::string& path) {
  std::string text = read_file(path);
  psk_spec* spec = nullptr;
  if (int rc = psk_spec_parse_json(text.c_str(), &spec); rc != PSK_OK) die(rc);
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"point-source expansion workbench"};
  app.require_subcommand(1);

  // eval
  std::string eval_spec_path, eval_out;
  double eval_re = 2.0, eval_im = 0.0;
  auto* eval = app.add_subcommand("eval", "evaluate an expansion at one exterior point");
  eval->add_option("--spec", eval_spec_path, "expansion spec JSON file")->required();
  eval->add_option("--re", eval_re, "Re z");
  eval->add_option("--im", eval_im, "Im z");
  eval->add_option("--out", eval_out, "output file (default stdout)");

  // series
  std::string series_spec_path, series_out;
  double series_radius = 2.0, series_tol = 1e-12;
  int series_samples = 64;
  auto* series = app.add_subcommand("series", "compare truncated power series against direct evaluation");
  series->add_option("--spec", series_spec_path, "expansion spec JSON file")->required();
  series->add_option("--radius", series_radius, "evaluation circle radius (>= 1)");
  series->add_option("--tol", series_tol, "relative tolerance for truncation and the verdict");
  series->add_option("--samples", series_samples, "points on the circle");
  series->add_option("--out", series_out, "output file (default stdout)");

  // branchcut
  std::string bc_spec_path, bc_out;
  double bc_radius = 1.0;
  int bc_samples = 4096;
  auto* bc = app.add_subcommand("branchcut", "scan Im log(z/(z - z_k)) on a circle");
  bc->add_option("--spec", bc_spec_path, "expansion spec JSON file")->required();
  bc->add_option("--radius", bc_radius, "scan radius (>= 1)");
  bc->add_option("--samples", bc_samples, "angular samples");
  bc->add_option("--out", bc_out, "output file (default stdout)");

  // verify
  std::string verify_kind = "log", verify_out;
  int verify_nk = 4, verify_trials = 10;
  std::uint64_t verify_seed = 1;
  auto* verify = app.add_subcommand("verify", "seeded independence trials for one expansion kind");
  verify->add_option("--kind", verify_kind, "log | poleM | mixed12 | log-pole");
  verify->add_option("--nk", verify_nk, "source count");
  verify->add_option("--trials", verify_trials, "trial count");
  verify->add_option("--seed", verify_seed, "master seed");
  verify->add_option("--out", verify_out, "JSONL output file (default stdout)");

  // probe-c
  std::string probe_sampler = "annulus", probe_out, probe_records;
  int probe_nk = 4, probe_m = 1, probe_trials = 1000;
  std::uint64_t probe_seed = 1;
  auto* probe = app.add_subcommand("probe-c", "Monte-Carlo sweep of sigma_min of the node interaction matrix");
  probe->add_option("--nk", probe_nk, "source count");
  probe->add_option("--m", probe_m, "matrix order (1 = C itself)");
  probe->add_option("--trials", probe_trials, "trial count");
  probe->add_option("--seed", probe_seed, "master seed");
  probe->add_option("--sampler", probe_sampler, "annulus | near-boundary | clustered");
  probe->add_option("--out", probe_out, "report JSON file (default stdout)");
  probe->add_option("--records", probe_records, "per-trial JSONL file");

  // report
  std::string report_records, report_out;
  auto* report = app.add_subcommand("report", "rebuild an aggregate report from probe records");
  report->add_option("--records", report_records, "JSONL records file")->required();
  report->add_option("--out", report_out, "output file (default stdout)");

  // reduce3d
  std::string red_spec_path, red_mode = "pm", red_out;
  double red_tol = 1e-6;
  auto* red = app.add_subcommand("reduce3d", "collapse a 3D expansion onto a plane");
  red->add_option("--spec", red_spec_path, "3D spec JSON file")->required();
  red->add_option("--mode", red_mode, "pm | dipole");
  red->add_option("--tol", red_tol, "defect tolerance for the verdict");
  red->add_option("--out", red_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (*eval) {
    psk_spec* spec = parse_spec_file(eval_spec_path);
    double re = 0, im = 0;
    if (int rc = psk_eval(spec, eval_re, eval_im, &re, &im); rc != PSK_OK) die(rc);
    psk_spec_free(spec);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "{\"z\": [%.17g, %.17g], \"value\": [%.17g, %.17g]}\n",
                  eval_re, eval_im, re, im);
    write_output(eval_out, buf);
    return kExitOk;
  }

  if (*series) {
    psk_spec* spec = parse_spec_file(series_spec_path);
    double worst = 0;
    int rc = psk_series_check(spec, series_radius, series_tol, series_samples, &worst);
    psk_spec_free(spec);
    if (rc != PSK_OK) die(rc);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "{\"radius\": %.17g, \"max_rel_err\": %.17g, \"tol\": %.17g}\n",
                  series_radius, worst, series_tol);
    write_output(series_out, buf);
    return worst <= series_tol ? kExitOk : kExitFlagged;
  }

  if (*bc) {
    psk_spec* spec = parse_spec_file(bc_spec_path);
    double worst = 0;
    int rc = psk_branchcut_scan(spec, bc_radius, bc_samples, &worst);
    psk_spec_free(spec);
    if (rc != PSK_OK) die(rc);
    const double bound = std::acos(-1.0) / 2.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "{\"radius\": %.17g, \"max_im\": %.17g, \"bound\": %.17g}\n",
                  bc_radius, worst, bound);
    write_output(bc_out, buf);
    return worst < bound ? kExitOk : kExitFlagged;
  }

  if (*verify) {
    OwnedString jsonl;
    int flagged = 0;
    int rc = psk_verify(verify_kind.c_str(), verify_nk, verify_trials, verify_seed, &jsonl.ptr,
                        &flagged);
    if (rc != PSK_OK) die(rc);
    write_output(verify_out, jsonl.str());
    return flagged == 0 ? kExitOk : kExitFlagged;
  }

  if (*probe) {
    OwnedString rep, recs;
    int rc = psk_probe_c(probe_nk, probe_m, probe_trials, probe_seed, probe_sampler.c_str(),
                         &rep.ptr, probe_records.empty() ? nullptr : &recs.ptr);
    if (rc != PSK_OK) die(rc);
    if (!probe_records.empty()) write_output(probe_records, recs.str());
    write_output(probe_out, rep.str());
    return kExitOk;
  }

  if (*report) {
    std::string records = read_file(report_records);
    OwnedString rep;
    if (int rc = psk_report_from_jsonl(records.c_str(), &rep.ptr); rc != PSK_OK) die(rc);
    write_output(report_out, rep.str());
    return kExitOk;
  }

  if (*red) {
    std::string spec = read_file(red_spec_path);
    OwnedString rep;
    if (int rc = psk_reduce3d(spec.c_str(), red_mode.c_str(), &rep.ptr); rc != PSK_OK) die(rc);
    write_output(red_out, rep.str());
    // crude verdict scan: defect field from the JSON we just produced
    std::string text = rep.str();
    auto pos = text.find("\"defect\":");
    double defect = 0.0;
    if (pos != std::string::npos) defect = std::strtod(text.c_str() + pos + 9, nullptr);
    return defect <= red_tol ? kExitOk : kExitFlagged;
  }

  return kExitUsage;
}
