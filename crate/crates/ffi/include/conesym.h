#ifndef CONESYM_H
#define CONESYM_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call through the C interface.
 */
typedef enum ConesymStatus {
  /**
   * The call succeeded.
   */
  CONESYM_STATUS_OK = 0,
  /**
   * The input text did not parse.
   */
  CONESYM_STATUS_PARSE_ERROR = 1,
  /**
   * A goal or construction failed its preconditions.
   */
  CONESYM_STATUS_GOAL_ERROR = 2,
  /**
   * A null pointer, empty dimension or malformed argument.
   */
  CONESYM_STATUS_INVALID_ARGUMENT = 3,
  /**
   * An unexpected internal condition.
   */
  CONESYM_STATUS_INTERNAL_ERROR = 4,
  /**
   * A result entry does not fit in the requested integer width.
   */
  CONESYM_STATUS_OVERFLOW = 5,
} ConesymStatus;

/**
 * Opaque handle to a cone.
 */
typedef struct ConesymCone ConesymCone;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Release a string returned by this library.
 */
void conesym_string_free(char *s);

/**
 * Release a matrix buffer returned by this library.
 */
void conesym_matrix_free(int64_t *entries, uintptr_t rows, uintptr_t cols);

/**
 * Run a full job from input text and return the report.
 *
 * The text uses the same format as the command line tool.  `IsoCheck`
 * goals are rejected here because the C interface does not read files.
 * Returns `CONESYM_STATUS_GOAL_ERROR` when any goal failed; the report
 * with the per-goal error paragraphs is still written to `out_report`.
 */
enum ConesymStatus conesym_run_text(const char *input, char **out_report);

/**
 * Build a cone from a row-major matrix of integer generators.
 *
 * `entries` holds `rows * cols` values; `cols` is the ambient dimension.
 */
enum ConesymStatus conesym_cone_from_generators(const int64_t *entries,
                                                uintptr_t rows,
                                                uintptr_t cols,
                                                struct ConesymCone **out_cone);

/**
 * Release a cone handle.
 */
void conesym_cone_free(struct ConesymCone *cone);

/**
 * The Hilbert basis of a cone, in working coordinates, as a row-major
 * `i64` matrix.  Returns `CONESYM_STATUS_OVERFLOW` when an entry does not
 * fit.  Release the buffer with `conesym_matrix_free`.
 */
enum ConesymStatus conesym_cone_hilbert_basis(const struct ConesymCone *cone,
                                              int64_t **out_entries,
                                              uintptr_t *out_rows,
                                              uintptr_t *out_cols);

/**
 * The order of the integral automorphism group, as a decimal string
 * (group orders overflow fixed-width integers quickly).
 */
enum ConesymStatus conesym_cone_integral_automorphism_order(const struct ConesymCone *cone,
                                                            char **out_order);

/**
 * The canonical type of a cone, serialized as text.  Two cones are
 * related by a lattice-preserving linear bijection exactly when their
 * serializations agree (for equal lineality ranks).
 */
enum ConesymStatus conesym_cone_canonical_type(const struct ConesymCone *cone, char **out_text);

/**
 * Decide whether two cones are related by a lattice-preserving linear
 * bijection.  Writes 1 or 0 to `out_isomorphic`.
 */
enum ConesymStatus conesym_cones_isomorphic(const struct ConesymCone *a,
                                            const struct ConesymCone *b,
                                            int32_t *out_isomorphic);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONESYM_H */
