#ifndef HELM_H
#define HELM_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum HelmStatus {
  HELM_STATUS_OK = 0,
  HELM_STATUS_NULL_POINTER = 1,
  HELM_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed edge list or JSON document.
   */
  HELM_STATUS_PARSE = 3,
  /**
   * Self-loop or duplicate edge.
   */
  HELM_STATUS_INVALID_GRAPH = 4,
  HELM_STATUS_DIMENSION_MISMATCH = 5,
  HELM_STATUS_BUFFER_TOO_SMALL = 6,
  HELM_STATUS_NON_FINITE = 7,
  /**
   * Product and entrywise assembly disagree, or a decomposition misses
   * its tolerance.
   */
  HELM_STATUS_VERIFICATION_FAILED = 8,
  /**
   * A panic was caught at the boundary.
   */
  HELM_STATUS_INTERNAL = 9,
  /**
   * An argument outside its domain, such as a non-positive tolerance.
   */
  HELM_STATUS_INVALID_ARGUMENT = 10,
} HelmStatus;

/**
 * Assembly route for [`helm_complex_helmholtzian`].
 */
typedef enum HelmMethod {
  HELM_METHOD_PRODUCT = 0,
  HELM_METHOD_ENTRYWISE = 1,
  /**
   * Both routes, compared entry by entry.
   */
  HELM_METHOD_VERIFY = 2,
} HelmMethod;

/**
 * Opaque handle to an oriented clique complex.
 */
typedef struct HelmComplex HelmComplex;

typedef struct HelmNullityReport {
  size_t n;
  size_t m;
  size_t t;
  size_t omega;
  size_t rank_b;
  size_t rank_c;
  size_t eta_exact;
  /**
   * `m - n - t + omega`; may be negative when triangles are dependent.
   */
  int64_t eta_predicted;
  bool triangles_independent;
} HelmNullityReport;

typedef struct HelmRanking {
  double consistency_ratio;
  double harmonic_ratio;
  double curl_ratio;
  /**
   * Set for the zero flow.
   */
  bool degenerate;
} HelmRanking;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never null.
 */
const char *helm_status_message(enum HelmStatus status);

/**
 * Message for the last failure on this thread, or null if none. Valid
 * until the next failing call on the same thread.
 */
const char *helm_last_error_message(void);

/**
 * Parses a whitespace-separated edge list.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum HelmStatus helm_complex_from_edge_list(const char *text, struct HelmComplex **out);

/**
 * Reads the JSON document produced by [`helm_complex_to_json`].
 *
 * # Safety
 * As for [`helm_complex_from_edge_list`].
 */
enum HelmStatus helm_complex_from_json(const char *text, struct HelmComplex **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `complex` must come from this library and not be used afterwards.
 */
void helm_complex_free(struct HelmComplex *complex);

/**
 * Vertex, edge, triangle and component counts. Null outputs are skipped.
 *
 * # Safety
 * `complex` must be a live handle; non-null outputs must be writable.
 */
enum HelmStatus helm_complex_counts(const struct HelmComplex *complex,
                                    size_t *n,
                                    size_t *m,
                                    size_t *t,
                                    size_t *omega);

/**
 * Exact nullity report.
 *
 * # Safety
 * `complex` must be a live handle and `out` writable.
 */
enum HelmStatus helm_complex_nullity(const struct HelmComplex *complex,
                                     struct HelmNullityReport *out);

/**
 * Dimension of the harmonic flow space, computed from an exact basis.
 *
 * # Safety
 * `complex` must be a live handle and `out` writable.
 */
enum HelmStatus helm_complex_harmonic_dimension(const struct HelmComplex *complex, size_t *out);

/**
 * Edge-vertex incidence `B` (m × n), row-major.
 *
 * # Safety
 * `buf` must hold `capacity` values or be null; `rows`, `cols` may be null.
 */
enum HelmStatus helm_complex_incidence_b(const struct HelmComplex *complex,
                                         int64_t *buf,
                                         size_t capacity,
                                         size_t *rows,
                                         size_t *cols);

/**
 * Triangle-edge incidence `C` (t × m), row-major.
 *
 * # Safety
 * As for [`helm_complex_incidence_b`].
 */
enum HelmStatus helm_complex_incidence_c(const struct HelmComplex *complex,
                                         int64_t *buf,
                                         size_t capacity,
                                         size_t *rows,
                                         size_t *cols);

/**
 * The Helmholtzian (m × m), row-major. With [`HelmMethod::Verify`] a
 * disagreement between the two routes yields
 * [`HelmStatus::VerificationFailed`] and nothing is written.
 *
 * # Safety
 * As for [`helm_complex_incidence_b`].
 */
enum HelmStatus helm_complex_helmholtzian(const struct HelmComplex *complex,
                                          enum HelmMethod method,
                                          int64_t *buf,
                                          size_t capacity,
                                          size_t *rows,
                                          size_t *cols);

/**
 * Helmholtz decomposition of an edge flow of length `m`. Each non-null
 * output receives `m` values. Fails with
 * [`HelmStatus::VerificationFailed`] if the parts miss the relative
 * tolerance `tol` (outputs are still written).
 *
 * # Safety
 * `flow` must hold `len` values; non-null outputs must hold `len` values.
 */
enum HelmStatus helm_complex_decompose(const struct HelmComplex *complex,
                                       const double *flow,
                                       size_t len,
                                       double tol,
                                       double *gradient,
                                       double *harmonic,
                                       double *curl);

/**
 * Least-squares vertex scores (mean zero per component) into `potential`,
 * which must hold `n` values when non-null.
 *
 * # Safety
 * `flow` must hold `len` values; `potential` must hold `n` values or be
 * null; `out` may be null.
 */
enum HelmStatus helm_complex_rank(const struct HelmComplex *complex,
                                  const double *flow,
                                  size_t len,
                                  double *potential,
                                  size_t capacity,
                                  struct HelmRanking *out);

/**
 * The complex as a JSON document (vertices, edges, triangles). Release
 * with [`helm_string_free`]. Null on failure.
 *
 * # Safety
 * `complex` must be a live handle.
 */
char *helm_complex_to_json(const struct HelmComplex *complex);

/**
 * The nullity report as JSON. Release with [`helm_string_free`].
 *
 * # Safety
 * `complex` must be a live handle.
 */
char *helm_complex_nullity_json(const struct HelmComplex *complex);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void helm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HELM_H */
