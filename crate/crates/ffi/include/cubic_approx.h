#ifndef CUBIC_APPROX_H
#define CUBIC_APPROX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Classified case of a point.
 */
typedef enum CaCase {
  CA_CASE_ON_RATIONAL_LINE = 0,
  CA_CASE_ISOLATED_IN_SECTION = 1,
  CA_CASE_RATIONAL_TANGENT_LINES = 2,
  CA_CASE_GENERIC = 3,
} CaCase;

/**
 * Result codes. `CA_STATUS_OK` is zero; library errors map one to one onto
 * the error kinds of the Rust API.
 */
typedef enum CaStatus {
  CA_STATUS_OK = 0,
  CA_STATUS_NULL_POINTER = 1,
  CA_STATUS_INVALID_UTF8 = 2,
  CA_STATUS_PANIC = 3,
  CA_STATUS_PARSE_ERROR = 10,
  CA_STATUS_SINGULAR_CHANGE = 11,
  CA_STATUS_ZERO_INPUT = 12,
  CA_STATUS_DIMENSION_MISMATCH = 13,
  CA_STATUS_POINT_NOT_ON_X = 14,
  CA_STATUS_SINGULAR_AT_P = 15,
  CA_STATUS_REDUCIBLE = 16,
  CA_STATUS_WORSE_THAN_NODE = 17,
  CA_STATUS_POINT_NOT_ON_CURVE = 18,
  CA_STATUS_POINT_ON_LINE = 19,
  CA_STATUS_NOT_A_LINE_ON_X = 20,
  CA_STATUS_NO_QUADRATIC_POINT_FOUND = 21,
  CA_STATUS_EMPTY_LOCAL_QUADRIC = 22,
  CA_STATUS_BRANCH_NOT_IN_KV = 23,
  CA_STATUS_NO_APPROXIMANTS = 24,
  CA_STATUS_NO_RATIONAL_LINE_KNOWN = 25,
  CA_STATUS_UNDECIDED = 26,
  CA_STATUS_UNSUPPORTED = 27,
  CA_STATUS_INVALID = 28,
  CA_STATUS_OVERFLOW = 29,
  CA_STATUS_IO = 30,
} CaStatus;

/**
 * The outcome of a classification.
 */
typedef struct CaClassification CaClassification;

/**
 * A cubic hypersurface.
 */
typedef struct CaHypersurface CaHypersurface;

/**
 * A point of projective space with integer coordinates.
 */
typedef struct CaPoint CaPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *ca_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *ca_version(void);

/**
 * Frees a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void ca_string_free(char *s);

/**
 * Parses a cubic form in at least `min_vars` variables `x0, x1, ...`.
 *
 * # Safety
 * `form` must be a nul-terminated string and `out` a valid pointer.
 */
enum CaStatus ca_hypersurface_parse(const char *form, size_t min_vars, struct CaHypersurface **out);

/**
 * Number of homogeneous coordinates of the ambient space.
 *
 * # Safety
 * `x` must be a live handle.
 */
size_t ca_hypersurface_coords(const struct CaHypersurface *x);

/**
 * Whether `p` lies on `x`; 1 for yes, 0 for no or on bad arguments.
 *
 * # Safety
 * Both handles must be live.
 */
int32_t ca_hypersurface_contains(const struct CaHypersurface *x, const struct CaPoint *p);

/**
 * # Safety
 * `x` must be null or a handle from [`ca_hypersurface_parse`].
 */
void ca_hypersurface_free(struct CaHypersurface *x);

/**
 * Parses a point such as `"3:4:5:-6"`.
 *
 * # Safety
 * `s` must be a nul-terminated string and `out` a valid pointer.
 */
enum CaStatus ca_point_parse(const char *s, struct CaPoint **out);

/**
 * Canonical text of a point; free with [`ca_string_free`].
 *
 * # Safety
 * `p` must be a live handle.
 */
char *ca_point_to_string(const struct CaPoint *p);

/**
 * # Safety
 * `p` must be null or a handle from [`ca_point_parse`].
 */
void ca_point_free(struct CaPoint *p);

/**
 * `dist(p, q)` at `place` as a nul-terminated rational, e.g. `"1/25"`.
 *
 * # Safety
 * Handles must be live, `place` nul-terminated and `out` valid.
 */
enum CaStatus ca_dist(const struct CaPoint *p,
                      const struct CaPoint *q,
                      const char *place,
                      char **out);

/**
 * Predicts the approximation constant of `p` on `x` at `place`
 * (`"real"` or `"p=<prime>"`).
 *
 * # Safety
 * Handles must be live, `place` nul-terminated and `out` valid.
 */
enum CaStatus ca_classify(const struct CaHypersurface *x,
                          const struct CaPoint *p,
                          const char *place,
                          uint64_t search_bound,
                          struct CaClassification **out);

/**
 * # Safety
 * `c` must be a live handle and `out` valid.
 */
enum CaStatus ca_classification_case(const struct CaClassification *c, enum CaCase *out);

/**
 * Predicted constant as `num / den` with `den > 0`; `den = 0` means
 * infinity.
 *
 * # Safety
 * `c` must be a live handle; `num` and `den` valid.
 */
enum CaStatus ca_classification_alpha(const struct CaClassification *c, int64_t *num, int64_t *den);

/**
 * 1 when the classification is proved, 0 when heuristic.
 *
 * # Safety
 * `c` must be a live handle.
 */
int32_t ca_classification_is_proved(const struct CaClassification *c);

/**
 * The full result with certificates as JSON; free with [`ca_string_free`].
 *
 * # Safety
 * `c` must be a live handle.
 */
char *ca_classification_json(const struct CaClassification *c);

/**
 * # Safety
 * `c` must be null or a handle from [`ca_classify`].
 */
void ca_classification_free(struct CaClassification *c);

/**
 * Runs the full pipeline on a problem given as `key=value` lines and
 * returns the JSON report; free with [`ca_string_free`].
 *
 * # Safety
 * `problem` must be nul-terminated and `out` valid.
 */
enum CaStatus ca_run_report(const char *problem, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUBIC_APPROX_H */
