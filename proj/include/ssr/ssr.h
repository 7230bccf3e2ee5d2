/*
 * ssr — superselection-rule resource calculations.
 *
 * C interface to the shared library: opaque handles, integer status codes,
 * UTF-8 JSON strings.  Every function returns a status code; on failure a
 * human-readable message is available from ssr_last_error() until the next
 * call on the same thread.
 *
 * Status codes match the CLI exit codes and are stable across versions:
 *   0  success
 *   1  input validation failure (bad state, group, or argument)
 *   2  a verification check failed
 *   3  parse or I/O failure (malformed spec file, unreadable path)
 */

#ifndef SSR_H
#define SSR_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SSR_OK 0
#define SSR_ERR_VALIDATION 1
#define SSR_ERR_CHECK 2
#define SSR_ERR_PARSE 3

typedef struct ssr_group ssr_group;
typedef struct ssr_state ssr_state;

/* Library version, e.g. "0.1.0".  Static storage, do not free. */
const char* ssr_version(void);

/* Message for the last failing call on this thread; "" if none. */
const char* ssr_last_error(void);

/*
 * Run a full command and receive the JSON report.  config_json mirrors the
 * CLI flags:
 *   {"command": "resources"|"decompose"|"verify"|"reproduce-paper",
 *    "group": <catalog name or spec path>, "state": <builder or spec path>,
 *    "charges": <spec path>, "suite": <verify suite>, "seed": <uint>,
 *    "trials": <int>, "tol": <double>}
 * *report_out is malloc'd; release it with ssr_free_string.  The report is
 * produced for every status code except when config_json itself cannot be
 * parsed.
 */
int ssr_run_json(const char* config_json, char** report_out);

void ssr_free_string(char* s);

/* ------------------------------------------------------------------ groups */

/* name: catalog entry ("Z1".."Z12", "S3", "D4", "Q8"). */
int ssr_group_open_catalog(const char* name, ssr_group** out);
/* spec_json: a group spec document (see README: group spec format). */
int ssr_group_open_spec(const char* spec_json, ssr_group** out);
void ssr_group_close(ssr_group* group);

int ssr_group_order(const ssr_group* group, int* out);
int ssr_group_num_irreps(const ssr_group* group, int* out);
int ssr_group_rep_dim(const ssr_group* group, int* out);
/* max |Σ_g T^mu_kl (T^nu_nm)* − (|G|/D_mu) δδδ| over the irrep catalog. */
int ssr_group_orthogonality_residual(const ssr_group* group, double* out);

/* ------------------------------------------------------------------ states */

/*
 * spec_json: a state spec document (see README: state spec format).  `group`
 * may be NULL; it is required by builders that reference irreps.
 */
int ssr_state_open_spec(const char* spec_json, const ssr_group* group, ssr_state** out);
/* builder: "refbit", "spin-plus", "spin-plus-2". */
int ssr_state_open_builder(const char* builder, const ssr_group* group, ssr_state** out);
void ssr_state_close(ssr_state* state);

int ssr_state_dim(const ssr_state* state, int* out);

/*
 * Scalar resource quantity in bits.  Names: "W", "W_G", "A_G", "W_GxG",
 * "A_sh", "A_lo", "E", "W_L", "H_ch", "H_co", "E_GxG", "W_GxG_L".
 * `group` may be NULL when the state carries its own U(1) charges (refbit,
 * spin-plus) or was built as a symmetric state.
 */
int ssr_quantity(const ssr_state* state, const ssr_group* group, const char* name, double* out);

#ifdef __cplusplus
}
#endif

#endif /* SSR_H */
