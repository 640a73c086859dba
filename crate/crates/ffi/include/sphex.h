#ifndef SPHEX_H
#define SPHEX_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum SphexStatus {
  SPHEX_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SPHEX_STATUS_NULL = 1,
  /**
   * An argument was out of range or referred to something unknown.
   */
  SPHEX_STATUS_INVALID_ARG = 2,
  /**
   * JSON or parameter text could not be parsed.
   */
  SPHEX_STATUS_PARSE = 3,
  /**
   * The call completed but a check failed; the report is still written.
   */
  SPHEX_STATUS_INCONSISTENT = 4,
  /**
   * The library panicked. No output was written.
   */
  SPHEX_STATUS_PANIC = 5,
} SphexStatus;

/**
 * Opaque handle to an affine monoid.
 */
typedef struct SphexMonoid SphexMonoid;

/**
 * Opaque handle to a diagonal torus action.
 */
typedef struct SphexTorusAction SphexTorusAction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string.
 */
const char *sphex_version(void);

/**
 * Message of the last failed call on this thread, or null.
 *
 * The pointer stays valid until the next call into the library on the same
 * thread.
 */
const char *sphex_last_error(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string obtained from this library, not yet freed.
 */
void sphex_string_free(char *s);

/**
 * Builds a monoid from JSON (`{"rank": 2, "generators": [[1,0],[1,1]]}`).
 *
 * # Safety
 * `json` must be a valid nul-terminated string and `out` writable.
 */
enum SphexStatus sphex_monoid_from_json(const char *json, struct SphexMonoid **out);

/**
 * # Safety
 * `m` must be null or a handle from [`sphex_monoid_from_json`], not yet freed.
 */
void sphex_monoid_free(struct SphexMonoid *m);

/**
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum SphexStatus sphex_monoid_rank(const struct SphexMonoid *m, size_t *out);

/**
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum SphexStatus sphex_monoid_is_free(const struct SphexMonoid *m, bool *out);

/**
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum SphexStatus sphex_monoid_is_excellent(const struct SphexMonoid *m, bool *out);

/**
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum SphexStatus sphex_monoid_is_almost_excellent(const struct SphexMonoid *m, bool *out);

/**
 * Full semigroup report as JSON, as printed by `sphex semigroup check`.
 *
 * # Safety
 * `m` must be a live handle and `out` writable. Free the result with
 * [`sphex_string_free`].
 */
enum SphexStatus sphex_monoid_report(const struct SphexMonoid *m, char **out);

/**
 * Builds a torus action from JSON (`{"torus_rank": 1, "weights": [[1],[-1]]}`).
 *
 * # Safety
 * `json` must be a valid nul-terminated string and `out` writable.
 */
enum SphexStatus sphex_torus_from_json(const char *json, struct SphexTorusAction **out);

/**
 * # Safety
 * `a` must be null or a handle from [`sphex_torus_from_json`], not yet freed.
 */
void sphex_torus_free(struct SphexTorusAction *a);

/**
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum SphexStatus sphex_torus_quotient_dim(const struct SphexTorusAction *a, size_t *out);

/**
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum SphexStatus sphex_torus_null_cone_dim(const struct SphexTorusAction *a, size_t *out);

/**
 * Full analysis as JSON, as printed by `sphex torus analyze`.
 *
 * # Safety
 * `a` must be a live handle and `out` writable. Free the result with
 * [`sphex_string_free`].
 */
enum SphexStatus sphex_torus_report(const struct SphexTorusAction *a, char **out);

/**
 * Validates catalog entries against the computed verdicts.
 *
 * `entry` may be null for every entry. `params` is null or text such as
 * `"n=2,m=1"`. A positive `sweep` sweeps every parameter up to that bound.
 * Returns `SPHEX_STATUS_INCONSISTENT` with the report written when some
 * instance disagrees with the catalog.
 *
 * # Safety
 * String arguments must be null or valid nul-terminated strings, `out`
 * writable.
 */
enum SphexStatus sphex_catalog_validate(const char *entry,
                                        const char *params_text,
                                        int64_t sweep,
                                        char **out);

/**
 * Analyses a construction given as JSON, as `sphex construct` does.
 *
 * # Safety
 * `json` must be a valid nul-terminated string and `out` writable.
 */
enum SphexStatus sphex_construct(const char *json, char **out);

/**
 * Runs the semi-invariance and witness checks for a case such as `"2-3"`.
 *
 * `params` is null for the defaults. Returns `SPHEX_STATUS_INCONSISTENT`
 * with the report written when a check fails.
 *
 * # Safety
 * String arguments must be null (except `case_id`) or valid nul-terminated
 * strings, `out` writable.
 */
enum SphexStatus sphex_witness_run(const char *case_id,
                                   const char *params_text,
                                   size_t samples,
                                   uint64_t seed,
                                   char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPHEX_H */
