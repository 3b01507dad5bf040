#ifndef PRETZELC_H
#define PRETZELC_H

/* Generated by cbindgen from crates/ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  PZ_ERROR_OK = 0,
  PZ_ERROR_NULL_ARGUMENT = 1,
  PZ_ERROR_INVALID_UTF8 = 2,
  PZ_ERROR_PARSE = 3,
  PZ_ERROR_NOT_A_KNOT = 4,
  PZ_ERROR_INTERNAL = 5,
  PZ_ERROR_PANIC = 6,
} PzError;

typedef enum {
  PZ_FIBER_FIBERED = 1,
  PZ_FIBER_NOT_FIBERED = 2,
  PZ_FIBER_REDUCES_TO_TYPE3 = 3,
  PZ_FIBER_NOT_A_KNOT = 4,
} PzFiber;

typedef enum {
  PZ_KIND_TYPE1 = 1,
  PZ_KIND_TYPE2 = 2,
  PZ_KIND_TYPE3 = 3,
  PZ_KIND_LINK = 4,
} PzKind;

typedef enum {
  PZ_STATUS_RIBBON_KNOWN = 1,
  PZ_STATUS_NOT_SLICE = 2,
  PZ_STATUS_EXCEPTIONAL = 3,
  PZ_STATUS_OBSTRUCTIONS_VANISH = 4,
  PZ_STATUS_INCONCLUSIVE = 5,
  PZ_STATUS_NOT_APPLICABLE = 6,
} PzStatus;

/**
 * Opaque analysis result.
 */
typedef struct PzVerdict PzVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Owned by the
 * library and valid until the next call.
 */
const char *pz_last_error(void);

/**
 * Full analysis. `node_limit` 0 means no limit.
 *
 * # Safety
 * `params` must be a NUL-terminated string; `out` must be writable.
 */
PzError pz_analyze(const char *params, uint64_t node_limit, PzVerdict **out);

/**
 * # Safety
 * `v` must come from `pz_analyze` and not be freed twice; null is ignored.
 */
void pz_verdict_free(PzVerdict *v);

/**
 * # Safety
 * `v` must be a live verdict or null.
 */
PzKind pz_verdict_kind(const PzVerdict *v);

/**
 * # Safety
 * `v` must be a live verdict or null.
 */
PzFiber pz_verdict_fibered(const PzVerdict *v);

/**
 * # Safety
 * `v` must be a live verdict or null.
 */
PzStatus pz_verdict_status(const PzVerdict *v);

/**
 * The verdict as a JSON record; release with `pz_string_free`.
 *
 * # Safety
 * `v` must be a live verdict; `out` must be writable.
 */
PzError pz_verdict_json(const PzVerdict *v, char **out);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void pz_string_free(char *s);

/**
 * Knot determinant, `|det|` of the plumbing form.
 *
 * # Safety
 * `params` must be a NUL-terminated string; `out` must be writable.
 */
PzError pz_determinant(const char *params, uint64_t *out);

/**
 * # Safety
 * `params` must be a NUL-terminated string; `out` must be writable.
 */
PzError pz_signature(const char *params, int64_t *out);

/**
 * Fiberedness of the normalized diagram, in the order given.
 *
 * # Safety
 * `params` must be a NUL-terminated string; `out` must be writable.
 */
PzError pz_fibered(const char *params, PzFiber *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRETZELC_H */
