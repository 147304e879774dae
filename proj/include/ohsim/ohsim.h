/* SPDX-License-Identifier: Apache-2.0 */
/*
 * C API of the one-hot-map conversion simulator. All functions return an
 * ohsim_status; every out-parameter string is heap-allocated and must be
 * released with ohsim_string_free. Handles are opaque and single-threaded.
 */
#ifndef OHSIM_H
#define OHSIM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ohsim_status {
    OHSIM_OK = 0,
    OHSIM_ERR_INVALID_ARGUMENT = 1,
    OHSIM_ERR_OVERFLOW = 2,
    OHSIM_ERR_DEPTH_BUDGET = 3,
    OHSIM_ERR_BAD_CONFIG = 4,
    OHSIM_ERR_INTERNAL = 5
} ohsim_status;

typedef struct ohsim_context ohsim_context;

/* Library version, monotonically increasing (major * 10000 + minor * 100 + patch). */
unsigned ohsim_version(void);

/* Message for the most recent error on this thread ("" when none). */
const char* ohsim_last_error(void);

void ohsim_string_free(char* s);

/* Context lifecycle. config_json schema matches the CLI --config document:
 * {"slot_count": ..., "profile": {...}, "depth_budget": ..., "auto_bootstrap": ...}. */
ohsim_status ohsim_context_create(const char* config_json, ohsim_context** out);
void ohsim_context_free(ohsim_context* ctx);

/* Cost ledger of a context as a JSON object with the six op counters and
 * max_depth. */
ohsim_status ohsim_context_ledger(const ohsim_context* ctx, char** out_json);
ohsim_status ohsim_context_reset_ledger(ohsim_context* ctx);

/* Runs one experiment described by spec_json (see the README for the
 * schema; experiment in {tradeoff, num2onehot, shadow-bounds, comparators})
 * and returns the rendered output (CSV or JSON per the spec's format). */
ohsim_status ohsim_run_experiment(const char* spec_json, char** out_text);

/* Moduli search: returns {"moduli": [...], "m": ..., "n": ..., "slot_cost": ...,
 * "warning": bool}. strategy: "primes" or "scan"; t is the scan range. */
ohsim_status ohsim_find_crt_basis(long n, const char* strategy, long t, char** out_json);

/* Shadow rebalancing tree for a power-of-two leaf count, as nested JSON with
 * exact numerator/denominator strings. */
ohsim_status ohsim_shadow_tree(long leaves, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* OHSIM_H */
