#ifndef RECTCHAR_H
#define RECTCHAR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum RcStatus {
  RC_STATUS_OK = 0,
  /**
   * A required pointer was NULL.
   */
  RC_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  RC_STATUS_INVALID_UTF8 = 2,
  /**
   * An argument was malformed or out of range (bad partition, shape or size).
   */
  RC_STATUS_INVALID_ARGUMENT = 3,
  /**
   * A computation would exceed a size cap.
   */
  RC_STATUS_CAP_EXCEEDED = 4,
  /**
   * An exact division or integrality step failed.
   */
  RC_STATUS_NON_INTEGRAL = 5,
  /**
   * Any other failure inside the library.
   */
  RC_STATUS_INTERNAL = 6,
  /**
   * A Rust panic was caught at the boundary.
   */
  RC_STATUS_PANIC = 7,
} RcStatus;

/**
 * Opaque polynomial handle.
 */
typedef struct RcPoly RcPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void rc_string_free(char *s);

/**
 * The message for the last failed call on this thread, or NULL. The
 * caller owns the result.
 */
char *rc_last_error_message(void);

/**
 * Character value `χ^shape(cycle_type)`; fixed points may be omitted
 * from `cycle_type`.
 *
 * # Safety
 * String arguments must be valid C strings; `out_value` must be writable.
 */
enum RcStatus rc_chi(const char *shape, const char *cycle_type, char **out_value);

/**
 * Normalized character `(n)_k χ^shape(mu, 1^{n-k}) / f^shape` as a
 * decimal rational.
 *
 * # Safety
 * As for [`rc_chi`].
 */
enum RcStatus rc_normalized_character(const char *shape, const char *mu, char **out_value);

/**
 * Whether the normalized character of the `p×q` rectangle at `mu`
 * equals the factorization polynomial evaluated at `(p, q)`.
 *
 * # Safety
 * `mu` must be a valid C string; `out_equal` must be writable.
 */
enum RcStatus rc_theorem1_check(size_t p, size_t q, const char *mu, bool *out_equal);

/**
 * The hook lemma for `lambda` inside the `p×q` rectangle.
 *
 * # Safety
 * `lambda` must be a valid C string; `out_holds` must be writable.
 */
enum RcStatus rc_lemma_check(const char *lambda, size_t p, size_t q, bool *out_holds);

/**
 * Interpolates `F_mu` for `m` rectangles and checks its flipped
 * coefficients. `out_json` (optional, may be NULL) receives the report.
 *
 * # Safety
 * `mu` must be a valid C string; `out_passed` must be writable;
 * `out_json` must be NULL or writable.
 */
enum RcStatus rc_conjecture_check(size_t m, const char *mu, bool *out_passed, char **out_json);

/**
 * The factorization polynomial of cycle type `mu` in `p` and `q`.
 *
 * # Safety
 * `mu` must be a valid C string; `out` must be writable.
 */
enum RcStatus rc_poly_factorization(const char *mu, struct RcPoly **out);

/**
 * `F_k` for `m` rectangles over `p_1..p_m, q_1..q_m`; `flip` applies
 * `(-1)^k` and `q_i -> -q_i`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RcStatus rc_poly_fk(size_t m, size_t k, bool flip_signs, struct RcPoly **out);

/**
 * Leading terms (total degree `k + 1`) of `F_k`.
 *
 * # Safety
 * `out` must be writable.
 */
enum RcStatus rc_poly_gk(size_t m, size_t k, bool flip_signs, struct RcPoly **out);

/**
 * `F_mu` for `m` rectangles, by interpolation (default size caps).
 *
 * # Safety
 * `mu` must be a valid C string; `out` must be writable.
 */
enum RcStatus rc_poly_f_mu(size_t m, const char *mu, struct RcPoly **out);

/**
 * Number of variables of the polynomial.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
enum RcStatus rc_poly_num_vars(const struct RcPoly *poly, size_t *out);

/**
 * Text form such as `-p^2*q + p*q^2`.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
enum RcStatus rc_poly_to_string(const struct RcPoly *poly, char **out);

/**
 * JSON document `{"variables": [...], "terms": [{"exp": [...], "coef": "..."}], "text": "..."}`.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
enum RcStatus rc_poly_to_json(const struct RcPoly *poly, char **out);

/**
 * Evaluates at an integer point of length [`rc_poly_num_vars`].
 *
 * # Safety
 * `poly` must be a live handle; `point` must hold `len` values;
 * `out_value` must be writable.
 */
enum RcStatus rc_poly_eval(const struct RcPoly *poly,
                           const int64_t *point,
                           size_t len,
                           char **out_value);

/**
 * Releases a polynomial handle. NULL is ignored.
 *
 * # Safety
 * `poly` must come from this library and not have been freed.
 */
void rc_poly_free(struct RcPoly *poly);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RECTCHAR_H */
