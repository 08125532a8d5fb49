/*
 * dcskit — disjoint covering system toolkit, C API.
 *
 * All functions return DCSKIT_OK (0) on success or a nonzero status code;
 * dcskit_last_error() describes the most recent failure on the calling
 * thread. Strings returned through char** parameters are heap-allocated and
 * must be released with dcskit_string_free(); systems with
 * dcskit_system_free().
 */
#ifndef DCSKIT_H
#define DCSKIT_H

#ifdef __cplusplus
extern "C" {
#endif

#define DCSKIT_OK 0
#define DCSKIT_ERR_INVALID 1  /* bad value or violated precondition */
#define DCSKIT_ERR_PARSE 2    /* malformed JSON or format violation */
#define DCSKIT_ERR_OVERFLOW 3 /* exact integer range exceeded */
#define DCSKIT_ERR_INTERNAL 4 /* library invariant violation */

typedef int dcskit_status;
typedef struct dcskit_system dcskit_system; /* opaque */

const char* dcskit_version(void);
const char* dcskit_last_error(void);

void dcskit_string_free(char* s);
void dcskit_system_free(dcskit_system* sys);

/* System JSON format:
 *   {"n": <int>, "m": <int>,
 *    "progressions": [{"residue": <int>, "modulus": <int>}, ...]}
 * with progressions in canonical (modulus, residue) order; unknown fields
 * are rejected. */
dcskit_status dcskit_system_from_json(const char* json, dcskit_system** out);
dcskit_status dcskit_system_to_json(const dcskit_system* sys, char** out_json);

/* Exact-cover plus shape verification. m_override < 0 keeps the system's
 * own multiplicity. The report is a JSON object; *valid is 1 when both the
 * cover and the shape check pass. */
dcskit_status dcskit_verify(const dcskit_system* sys, long long m_override, int require_min3,
                            int exhaustive, char** report_json, int* valid);

dcskit_status dcskit_two_add(const dcskit_system* sys, dcskit_system** out);
dcskit_status dcskit_two_drop(const dcskit_system* sys, dcskit_system** out);
dcskit_status dcskit_normalize_full(const dcskit_system* sys, dcskit_system** out,
                                    long long* drops);

typedef struct dcskit_search_config {
  long long m;
  long long n;     /* single-n enumeration when > 0 */
  long long n_max; /* range sweep otherwise */
  int translation; /* 1 = translation classes, 0 = raw systems */
  int jobs;        /* worker threads; <= 0 picks one per core */
  int naive;       /* 1 = brute-force reference engine (single n only) */
  unsigned long long node_limit; /* 0 = unlimited */
} dcskit_search_config;

/* systems_jsonl receives one canonical system per line; summary_json a
 * single JSON object with counts, prune statistics and a per-n table. */
dcskit_status dcskit_enumerate(const dcskit_search_config* config, char** systems_jsonl,
                               char** summary_json);

/* report is one of "inequalities", "classes", "density", "gap"; the system
 * must be an exact cover. */
dcskit_status dcskit_analyze(const dcskit_system* sys, const char* report, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* DCSKIT_H */
