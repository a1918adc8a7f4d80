#include "pskit.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <sstream>
#include <string>

#include "cbasis.hpp"
#include "json_io.hpp"
#include "lab.hpp"
#include "probe.hpp"
#include "reduction.hpp"

namespace {

thread_local std::string g_last_error;

// errc -> stable positive codes; 100 for anything unexpected.
int code_of(pskit::errc c) { return 1 + static_cast<int>(c); }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
int guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return PSK_OK;
  } catch (const pskit::error& e) {
    g_last_error = e.what();
    return code_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return 100;
  }
}

}  // namespace

struct psk_spec {
  pskit::cbasis::ExpansionSpec spec;
};

extern "C" {

const char* psk_error_name(int code) {
  if (code == PSK_OK) return "ok";
  if (code == 100) return "internal";
  int raw = code - 1;
  if (raw < 0 || raw > static_cast<int>(pskit::errc::io_error)) return "unknown";
  return pskit::errc_name(static_cast<pskit::errc>(raw));
}

const char* psk_last_error(void) { return g_last_error.c_str(); }

void psk_string_free(char* s) { std::free(s); }

int psk_spec_parse_json(const char* text, psk_spec** out) {
  if (!text || !out) return code_of(pskit::errc::invalid_argument);
  return guarded([&] {
    auto j = pskit::io::parse(text);
    *out = new psk_spec{pskit::io::spec_from_json(j)};
  });
}

void psk_spec_free(psk_spec* spec) { delete spec; }

int psk_eval(const psk_spec* spec, double re, double im, double* out_re, double* out_im) {
  if (!spec || !out_re || !out_im) return code_of(pskit::errc::invalid_argument);
  return guarded([&] {
    auto v = pskit::cbasis::eval_expansion(spec->spec, {re, im});
    *out_re = v.real();
    *out_im = v.imag();
  });
}

int psk_series_check(const psk_spec* spec, double radius, double rel_tol, int n_samples,
                     double* out_max_rel_err) {
  if (!spec || !out_max_rel_err) return code_of(pskit::errc::invalid_argument);
  return guarded([&] {
    if (radius < 1.0) pskit::fail(pskit::errc::domain_violation, "series check needs radius >= 1");
    if (n_samples < 1) pskit::fail(pskit::errc::insufficient_samples, "need n_samples >= 1");
    int order = pskit::cbasis::truncation_order(spec->spec.sources().r_max(), radius, rel_tol,
                                                spec->spec.max_order() - 1);
    auto coeffs = pskit::cbasis::series_coefficients(spec->spec, order);
    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i) {
      double th = 2.0 * std::numbers::pi * i / n_samples;
      std::complex<double> z = std::polar(radius, th);
      auto direct = pskit::cbasis::eval_expansion(spec->spec, z);
      auto series = pskit::cbasis::eval_series(coeffs, z);
      double scale = std::max(std::abs(direct), 1e-300);
      worst = std::max(worst, std::abs(direct - series) / scale);
    }
    *out_max_rel_err = worst;
  });
}

int psk_branchcut_scan(const psk_spec* spec, double radius, int samples, double* out_max_im) {
  if (!spec || !out_max_im) return code_of(pskit::errc::invalid_argument);
  return guarded([&] {
    if (radius < 1.0)
      pskit::fail(pskit::errc::domain_violation, "branch scan needs radius >= 1");
    double worst = 0.0;
    const auto& cfg = spec->spec.sources();
    for (std::size_t k = 0; k < cfg.size(); ++k)
      worst = std::max(worst, pskit::cbasis::verify_branch_free(cfg.node(k), radius, samples));
    *out_max_im = worst;
  });
}

int psk_verify(const char* kind, int n_k, int trials, uint64_t seed, char** out_jsonl,
               int* out_flagged) {
  if (!kind || !out_jsonl) return code_of(pskit::errc::invalid_argument);
  return guarded([&] {
    auto ek = pskit::lab::ExpKind::parse(kind);
    auto verdicts = pskit::lab::run_trials(ek, n_k, trials, seed);
    std::ostringstream ss;
    int flagged = 0;
    for (const auto& v : verdicts) {
      ss << pskit::io::verdict_to_json(v).dump() << "\n";
      if (!v.independent) flagged++;
    }
    *out_jsonl = dup_string(ss.str());
    if (out_flagged) *out_flagged = flagged;
  });
}

int psk_probe_c(int n_k, int m, int trials, uint64_t seed, const char* sampler,
                char** out_report_json, char** out_records_jsonl) {
  if (!sampler || !out_report_json) return code_of(pskit::errc::invalid_argument);
  return guarded([&] {
    pskit::probe::ProbeOptions opt;
    opt.m = m;
    opt.sampler = pskit::probe::parse_sampler(sampler);
    std::ostringstream records;
    pskit::probe::RecordSink sink;
    if (out_records_jsonl)
      sink = [&records](const pskit::probe::ProbeRecord& rec) {
        records << pskit::io::probe_record_to_json(rec).dump() << "\n";
      };
    auto rep = pskit::probe::probe_c(n_k, trials, seed, opt, sink);
    *out_report_json = dup_string(pskit::io::probe_report_to_json(rep).dump(2));
    if (out_records_jsonl) *out_records_jsonl = dup_string(records.str());
  });
}

int psk_report_from_jsonl(const char* records_jsonl, char** out_report_json) {
  if (!records_jsonl || !out_report_json) return code_of(pskit::errc::invalid_argument);
  return guarded([&] {
    std::istringstream in(records_jsonl);
    std::vector<pskit::probe::ProbeRecord> records;
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      records.push_back(pskit::io::probe_record_from_json(pskit::io::parse(line)));
    }
    auto rep = pskit::probe::aggregate(records);
    *out_report_json = dup_string(pskit::io::probe_report_to_json(rep).dump(2));
  });
}

int psk_reduce3d(const char* spec3_json, const char* mode, char** out_report_json) {
  if (!spec3_json || !mode || !out_report_json) return code_of(pskit::errc::invalid_argument);
  return guarded([&] {
    auto spec = pskit::io::realspec3_from_json(pskit::io::parse(spec3_json));
    std::string m = mode;
    pskit::reduction::ReduceReport rep = [&] {
      if (m == "pm") return pskit::reduction::reduce_pm_r3(spec);
      if (m == "dipole") return pskit::reduction::reduce_dipole_r3(spec);
      pskit::fail(pskit::errc::parse_error, "mode must be pm or dipole");
    }();
    *out_report_json = dup_string(pskit::io::reduce_report_to_json(rep).dump(2));
  });
}

}  // extern "C"
