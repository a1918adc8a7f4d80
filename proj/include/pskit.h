/* C interface to the pskit core. All functions return 0 on success or a
 * positive error code; psk_last_error() describes the most recent failure
 * on the calling thread. Strings returned through char** out-params are
 * heap-allocated and must be released with psk_string_free(). */
#ifndef PSKIT_H
#define PSKIT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define PSK_OK 0
/* Error codes 1..N mirror the core error categories; use psk_error_name. */

const char* psk_error_name(int code);
const char* psk_last_error(void); /* thread-local; valid until next psk_* call */
void psk_string_free(char* s);

/* ---- complex expansion specs (JSON in, opaque handle out) ---- */

typedef struct psk_spec psk_spec;

int psk_spec_parse_json(const char* text, psk_spec** out);
void psk_spec_free(psk_spec* spec);

/* Expansion value at z = re + i*im. */
int psk_eval(const psk_spec* spec, double re, double im, double* out_re, double* out_im);

/* Max relative series-vs-direct error over n_samples points on |z| = radius,
 * truncating so the geometric tail bound is below rel_tol. */
int psk_series_check(const psk_spec* spec, double radius, double rel_tol, int n_samples,
                     double* out_max_rel_err);

/* Max |Im log(z/(z - z_k))| over all sources on |z| = radius. Stays below
 * pi/2 when every source is inside the unit disk. */
int psk_branchcut_scan(const psk_spec* spec, double radius, int samples, double* out_max_im);

/* ---- independence verification sweeps ---- */

/* Runs `trials` seeded moment/Gram/recovery trials for the expansion kind
 * ("log", "pole1".."pole4", "mixed12", "log-pole") and returns one JSON
 * object per line. Exit-state summary: *out_flagged counts non-independent
 * verdicts. */
int psk_verify(const char* kind, int n_k, int trials, uint64_t seed, char** out_jsonl,
               int* out_flagged);

/* ---- conjecture probe ---- */

/* Monte-Carlo sweep of the minimum singular value of the node interaction
 * matrix. sampler: "annulus", "near-boundary", "clustered". m = 1 probes C,
 * m >= 2 probes C_m. Returns the aggregate report as JSON and, when
 * out_records_jsonl is non-null, every trial as JSONL. */
int psk_probe_c(int n_k, int m, int trials, uint64_t seed, const char* sampler,
                char** out_report_json, char** out_records_jsonl);

/* Rebuilds an aggregate report from previously written records. */
int psk_report_from_jsonl(const char* records_jsonl, char** out_report_json);

/* ---- 3D -> 2D reduction ---- */

/* spec3_json: {"sources": {...dim:3...}, "masses": [...]} or
 * {"sources": ..., "dipoles": [[x,y,z],...]}; mode: "pm" or "dipole".
 * Returns the collapsed plane spec and defect diagnostics as JSON. */
int psk_reduce3d(const char* spec3_json, const char* mode, char** out_report_json);

#ifdef __cplusplus
}
#endif

#endif /* PSKIT_H */
