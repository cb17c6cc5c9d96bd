#ifndef CUTSPECTRA_H
#define CUTSPECTRA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `CS_STATUS_OK` is zero.
 */
typedef enum CsStatus {
  CS_STATUS_OK = 0,
  CS_STATUS_NULL_POINTER = 1,
  CS_STATUS_INVALID_UTF8 = 2,
  CS_STATUS_PARSE = 3,
  CS_STATUS_INVALID_GRAPH = 4,
  CS_STATUS_TOO_LARGE = 5,
  CS_STATUS_UNKNOWN_PROBLEM = 6,
  CS_STATUS_INVALID_PARAMETER = 7,
  CS_STATUS_DOMAIN = 8,
  CS_STATUS_PANIC = 9,
} CsStatus;

/**
 * Opaque graph handle.
 */
typedef struct CsGraph CsGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an edge list or JSON graph. On success `*out` owns a new handle.
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum CsStatus cs_graph_parse(const char *text_ptr, struct CsGraph **out);

/**
 * Releases a handle from `cs_graph_parse`. Null is ignored.
 *
 * # Safety
 * `g` must come from `cs_graph_parse` and not be freed twice.
 */
void cs_graph_free(struct CsGraph *g);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum CsStatus cs_graph_vertex_count(const struct CsGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum CsStatus cs_graph_edge_count(const struct CsGraph *g, size_t *out);

/**
 * Exhaustive oracle for a ratio problem name (`cheeger_tv`, `maxcut`, ...)
 * or `mincut`. Writes the certificate as JSON to `*out_json`.
 *
 * # Safety
 * `g` must be a live handle, `problem` a valid C string and `out_json` a
 * valid pointer.
 */
enum CsStatus cs_oracle(const struct CsGraph *g, const char *problem, char **out_json);

/**
 * Verifies `(lambda, x)` for an eigenproblem. `lambda` is a rational literal
 * such as `2/3`; `vector` holds `n` whitespace-separated rationals.
 * `*out_verdict` is set to the verdict; `out_json` may be null, otherwise it
 * receives the full report.
 *
 * # Safety
 * Pointers must be valid; `out_json` may be null.
 */
enum CsStatus cs_verify(const struct CsGraph *g,
                        const char *problem,
                        const char *lambda,
                        const char *vector,
                        bool *out_verdict,
                        char **out_json);

/**
 * Dinkelbach iteration from `1_{0}`. `exact` selects exhaustive inner
 * steps; otherwise the seeded local search is used. Writes the trace as JSON.
 *
 * # Safety
 * Pointers must be valid.
 */
enum CsStatus cs_cut(const struct CsGraph *g,
                     const char *problem,
                     bool exact,
                     uint64_t seed,
                     char **out_json);

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next library call on the same thread.
 */
const char *cs_last_error(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void cs_string_free(char *s);

/**
 * Static name of a status code.
 */
const char *cs_status_name(enum CsStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUTSPECTRA_H */
