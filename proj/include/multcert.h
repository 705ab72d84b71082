/* multcert: certified collections of periodic orbits with locally
 * independent multipliers for degree-n rational maps.
 *
 * Every function is thread safe; errors are reported per thread. Strings
 * returned through char** are NUL-terminated, heap allocated, and must be
 * released with mcert_string_free. JSON output is deterministic: identical
 * inputs produce byte-identical documents.
 */

#ifndef MULTCERT_H
#define MULTCERT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mcert_status {
  MCERT_OK = 0,
  MCERT_USAGE,
  MCERT_WRONG_LENGTH,
  MCERT_OVERFLOW,
  MCERT_INDEX_EXCLUDED,
  MCERT_INDEX_OUT_OF_RANGE,
  MCERT_INFINITY_POINT,
  MCERT_RESULTANT_ZERO,
  MCERT_SINGULAR_MOBIUS,
  MCERT_NOT_A_CYCLE,
  MCERT_MULTIPLIER_ONE,
  MCERT_DEGENERATE_FIXED_POINTS,
  MCERT_NO_CONVERGENCE,
  MCERT_DERIVATIVE_SINGULAR,
  MCERT_CONDITIONS_NOT_MET,
  MCERT_EXHAUSTED,
  MCERT_VERIFICATION_FAILED,
  MCERT_PARSE,
  MCERT_UNSUPPORTED_PRECISION,
  MCERT_INTERNAL
} mcert_status;

/* Search and verification knobs. Zero-initialize then call
 * mcert_options_init for the defaults; passing NULL wherever an options
 * pointer is expected also selects the defaults. */
typedef struct mcert_options {
  double tol;            /* closed form vs finite differences, default 1e-4 */
  double h;              /* central difference step, default 1e-6 */
  int64_t max_backtrack; /* search node budget, default 100000 */
  int precision_bits;    /* 0 or <= 53 hardware, <= 166 / <= 332 software */
} mcert_options;

void mcert_options_init(mcert_options* opts);

const char* mcert_version(void);
const char* mcert_status_name(mcert_status s);

/* Message and JSON document for the last failure on the calling thread.
 * Valid until the next failing call on the same thread; never NULL. */
const char* mcert_last_error(void);
const char* mcert_last_error_json(void);

void mcert_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Query commands. Each writes one JSON document to *out.              */

/* Counts of periodic points of z -> z^n with minimal period m. */
mcert_status mcert_count_json(int64_t n, int64_t m, char** out);

/* Residues mod n^m - 1 of minimal period m, with orbit representatives. */
mcert_status mcert_enumerate_json(int64_t n, int64_t m, char** out);

/* Multiplier derivatives at the central family member: closed form next to
 * a finite-difference recomputation, rowwise per orbit representative. */
mcert_status mcert_derivs_json(int64_t n, int64_t m, const mcert_options* opts,
                               char** out);

/* ------------------------------------------------------------------ */
/* Certificates.                                                       */

typedef struct mcert_cert mcert_cert;

/* Builds and verifies a certificate for the given period labels
 * (length 2n-2). The labels need at most n ones, an entry >= 3, and no
 * entry equal to 2; otherwise MCERT_CONDITIONS_NOT_MET. */
mcert_status mcert_cert_construct(int64_t n, const int64_t* periods,
                                  int64_t len, const mcert_options* opts,
                                  mcert_cert** out);

/* Same search without the entry >= 3 / no-twos requirement and without a
 * success guarantee. */
mcert_status mcert_cert_explore(int64_t n, const int64_t* periods, int64_t len,
                                const mcert_options* opts, mcert_cert** out);

mcert_status mcert_cert_parse(const char* json_text, mcert_cert** out);
mcert_status mcert_cert_to_json(const mcert_cert* c, char** out);

/* Recomputes everything the certificate claims and writes the wrapped
 * verification report; MCERT_VERIFICATION_FAILED on the first violation. */
mcert_status mcert_cert_verify(const mcert_cert* c, const mcert_options* opts,
                               char** report_json);

/* Simple accessors; degree and point count return 0 on NULL. */
int64_t mcert_cert_degree(const mcert_cert* c);
int64_t mcert_cert_point_count(const mcert_cert* c);
mcert_status mcert_cert_det(const mcert_cert* c, double* re, double* im);

void mcert_cert_free(mcert_cert* c);

#ifdef __cplusplus
}
#endif

#endif /* MULTCERT_H */
