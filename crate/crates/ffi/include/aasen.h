#ifndef AASEN_H
#define AASEN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum AasenStatus {
  AASEN_STATUS_OK = 0,
  AASEN_STATUS_NULL_POINTER = 1,
  AASEN_STATUS_INVALID_ARGUMENT = 2,
  AASEN_STATUS_DIMENSION_MISMATCH = 3,
  AASEN_STATUS_NON_FINITE = 4,
  AASEN_STATUS_ASYMMETRIC = 5,
  AASEN_STATUS_SINGULAR = 6,
  AASEN_STATUS_DOMAIN = 7,
  AASEN_STATUS_INFEASIBLE = 8,
  AASEN_STATUS_INTERNAL = 9,
} AasenStatus;

/**
 * Pivot tie-breaking rule.
 */
typedef enum AasenTieRule {
  AASEN_TIE_RULE_FIRST = 0,
  AASEN_TIE_RULE_LOWEST = 1,
} AasenTieRule;

/**
 * Opaque factorization handle (`P A P^T = L T L^T`).
 */
typedef struct AasenFactorization AasenFactorization;

/**
 * Opaque symmetric matrix handle.
 */
typedef struct AasenMatrix AasenMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *aasen_status_message(enum AasenStatus status);

/**
 * Copies the calling thread's last error message into `buf` (NUL
 * terminated, truncated to `len - 1` bytes) and returns the full message
 * length in bytes. Pass a null `buf` to query the length.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t aasen_last_error(char *buf, size_t len);

/**
 * Creates a matrix from `n * n` row-major values. The two triangles must
 * agree to within 1e-12; the stored matrix is their exact average.
 *
 * # Safety
 * `data` must point to `n * n` readable doubles and `out` must be writable.
 */
enum AasenStatus aasen_matrix_new(size_t n, const double *data, struct AasenMatrix **out);

/**
 * Creates the closed-form extremal matrix of order `n` (4, 5 or 6) at
 * parameter `delta`.
 *
 * # Safety
 * `out` must be writable.
 */
enum AasenStatus aasen_extremal_matrix(size_t n, double delta, struct AasenMatrix **out);

/**
 * # Safety
 * `m` must be null or a handle from this library that has not been freed.
 */
void aasen_matrix_free(struct AasenMatrix *m);

/**
 * Dimension of `m`, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t aasen_matrix_dim(const struct AasenMatrix *m);

/**
 * Copies the matrix into `out` (`n * n` doubles, row-major).
 *
 * # Safety
 * `m` must be a live handle and `out` must hold `n * n` doubles.
 */
enum AasenStatus aasen_matrix_values(const struct AasenMatrix *m, double *out);

/**
 * Factorizes `m`.
 *
 * # Safety
 * `m` must be a live handle and `out` must be writable.
 */
enum AasenStatus aasen_factorize(const struct AasenMatrix *m,
                                 enum AasenTieRule rule,
                                 struct AasenFactorization **out);

/**
 * # Safety
 * `f` must be null or a handle from this library that has not been freed.
 */
void aasen_factorization_free(struct AasenFactorization *f);

/**
 * Dimension of the factorization, or 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t aasen_factorization_dim(const struct AasenFactorization *f);

/**
 * Copies the permutation (`n` indices, `(P A P^T)[i][j] = A[p[i]][p[j]]`).
 *
 * # Safety
 * `f` must be a live handle and `out` must hold `n` values.
 */
enum AasenStatus aasen_factorization_permutation(const struct AasenFactorization *f, size_t *out);

/**
 * Copies `L` as a full `n * n` row-major array (unit diagonal, zero upper
 * triangle).
 *
 * # Safety
 * `f` must be a live handle and `out` must hold `n * n` doubles.
 */
enum AasenStatus aasen_factorization_lower(const struct AasenFactorization *f, double *out);

/**
 * Copies `T`: `n` diagonal and `n - 1` off-diagonal values. `offdiag` may
 * be null when `n == 1`.
 *
 * # Safety
 * `f` must be a live handle; `diag` must hold `n` doubles and `offdiag`
 * `n - 1` doubles.
 */
enum AasenStatus aasen_factorization_tridiagonal(const struct AasenFactorization *f,
                                                 double *diag,
                                                 double *offdiag);

/**
 * `max |P A P^T - L T L^T|` for the matrix the factors came from.
 *
 * # Safety
 * `f` and `m` must be live handles and `out` writable.
 */
enum AasenStatus aasen_factorization_residual(const struct AasenFactorization *f,
                                              const struct AasenMatrix *m,
                                              double *out);

/**
 * Growth factor `max|T| / max|A|`.
 *
 * # Safety
 * `m` and `f` must be live handles and `out` writable.
 */
enum AasenStatus aasen_growth_factor(const struct AasenMatrix *m,
                                     const struct AasenFactorization *f,
                                     double *out);

/**
 * Checks every entrywise bound on `T`. Writes whether all pass and the
 * smallest margin; `min_margin` may be null.
 *
 * # Safety
 * `m` and `f` must be live handles, `all_pass` writable, `min_margin`
 * null or writable.
 */
enum AasenStatus aasen_certify(const struct AasenMatrix *m,
                               const struct AasenFactorization *f,
                               bool *all_pass,
                               double *min_margin);

/**
 * Solves `A x = b` with a factorization of `A`; `len` must equal `n`.
 *
 * # Safety
 * `f` must be a live handle; `b` and `x` must hold `len` doubles.
 */
enum AasenStatus aasen_solve(const struct AasenFactorization *f,
                             const double *b,
                             double *x,
                             size_t len);

/**
 * Optimal total slack of the `t(n,n)` program (`n >= 3`).
 *
 * # Safety
 * `out` must be writable.
 */
enum AasenStatus aasen_min_delta(size_t n, double *out);

/**
 * `2^(n-1)` growth bound for dimension `n`.
 */
double aasen_growth_bound(size_t n);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AASEN_H */
