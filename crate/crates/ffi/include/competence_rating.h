#ifndef COMPETENCE_RATING_H
#define COMPETENCE_RATING_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CrStatus {
  CR_STATUS_OK = 0,
  CR_STATUS_NULL_POINTER = 1,
  CR_STATUS_INVALID_INPUT = 2,
  CR_STATUS_DEGENERATE_NETWORK = 3,
  CR_STATUS_NO_CONVERGENCE = 4,
  CR_STATUS_BUFFER_TOO_SMALL = 5,
  CR_STATUS_PANIC = 6,
} CrStatus;

typedef enum CrDiagonalPolicy {
  CR_DIAGONAL_POLICY_REJECT = 0,
  CR_DIAGONAL_POLICY_COERCE = 1,
} CrDiagonalPolicy;

/**
 * Opaque survey handle.
 */
typedef struct CrSurvey CrSurvey;

typedef struct CrDispersionAggregate {
  size_t total_n;
  size_t total_dev2;
  size_t total_dev3plus;
  double pct_dev2;
  double pct_dev3plus;
  double pct_dev2plus;
} CrDispersionAggregate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *cr_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *cr_version(void);

/**
 * Validates a survey and stores a new handle in `*out`.
 *
 * `ratings` holds `n` values; `competence` holds `n * n` row-major cells,
 * each 0 or 1.
 *
 * # Safety
 * `ratings` must point to `n` doubles, `competence` to `n * n` bytes, and
 * `out` must be writable.
 */
enum CrStatus cr_survey_new(const double *ratings,
                            const uint8_t *competence,
                            size_t n,
                            double scale_min,
                            double scale_max,
                            enum CrDiagonalPolicy diagonal_policy,
                            struct CrSurvey **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `survey` must come from `cr_survey_new` and not have been freed.
 */
void cr_survey_free(struct CrSurvey *survey);

/**
 * Number of students, or 0 for NULL.
 *
 * # Safety
 * `survey` must be NULL or a live handle.
 */
size_t cr_survey_len(const struct CrSurvey *survey);

/**
 * Number of diagonal entries that were coerced to zero on construction.
 *
 * # Safety
 * `survey` must be NULL or a live handle.
 */
size_t cr_survey_warning_count(const struct CrSurvey *survey);

/**
 * # Safety
 * `survey` must be a live handle and `out` writable.
 */
enum CrStatus cr_arithmetic_mean(const struct CrSurvey *survey, double *out);

/**
 * Degree-centrality weights (into `weights`, `len` slots, may be NULL) and
 * weighted rating (into `rating`, may be NULL).
 *
 * # Safety
 * `survey` must be a live handle; non-null outputs must be writable.
 */
enum CrStatus cr_degree(const struct CrSurvey *survey, double *weights, size_t len, double *rating);

/**
 * Eigenfactor weights, influence vector, weighted rating and iteration
 * count. Any output pointer may be NULL.
 *
 * # Safety
 * `survey` must be a live handle; non-null outputs must be writable, with
 * `len` slots for the two vectors.
 */
enum CrStatus cr_eigenfactor(const struct CrSurvey *survey,
                             double alpha,
                             double tol,
                             size_t max_iter,
                             double *weights,
                             double *influence,
                             size_t len,
                             double *rating,
                             size_t *iterations);

/**
 * Full weighted-rating report as a JSON string, or NULL on failure. Free the
 * result with `cr_string_free`.
 *
 * # Safety
 * `survey` must be a live handle.
 */
char *cr_rate_json(const struct CrSurvey *survey, double alpha, double tol, size_t max_iter);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void cr_string_free(char *s);

/**
 * Aggregates pre-counted dispersion rows given as three parallel arrays of
 * `rows` entries.
 *
 * # Safety
 * Each array must hold `rows` elements; `out` must be writable.
 */
enum CrStatus cr_dispersion_aggregate(const size_t *n,
                                      const size_t *dev2,
                                      const size_t *dev3plus,
                                      size_t rows,
                                      struct CrDispersionAggregate *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COMPETENCE_RATING_H */
