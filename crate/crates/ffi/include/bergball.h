#ifndef BERGBALL_H
#define BERGBALL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `BB_STATUS_OK` is zero; everything else is a failure.
 */
typedef enum bb_status {
  BB_STATUS_OK = 0,
  BB_STATUS_NULL_POINTER = 1,
  BB_STATUS_INVALID_UTF8 = 2,
  BB_STATUS_PARSE = 3,
  BB_STATUS_DIMENSION_MISMATCH = 4,
  BB_STATUS_PRECONDITION = 5,
  /**
   * The target is outside the range of the Berezin transform.
   */
  BB_STATUS_NOT_IN_RANGE = 6,
  /**
   * The Toeplitz product has no symbol.
   */
  BB_STATUS_NOT_REPRESENTABLE = 7,
  BB_STATUS_UNSUPPORTED = 8,
  BB_STATUS_INTERNAL = 9,
} bb_status;

/**
 * Polynomial in `z` and `zbar`.
 */
typedef struct bb_polynomial bb_polynomial;

/**
 * Quasi-homogeneous symbol `sum c z^a zbar^b t^k (log t)^e`.
 */
typedef struct bb_symbol bb_symbol;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *bb_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void bb_string_free(char *s);

/**
 * Parse `coeff * z^(..) * zbar^(..) + ...`. `dim = 0` infers the dimension.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` writable.
 */
enum bb_status bb_polynomial_parse(const char *src, size_t dim, struct bb_polynomial **out);

/**
 * # Safety
 * `p` must come from this library or be null.
 */
void bb_polynomial_free(struct bb_polynomial *p);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum bb_status bb_polynomial_to_string(const struct bb_polynomial *p, char **out);

/**
 * # Safety
 * `src` must be a NUL-terminated string and `out` writable.
 */
enum bb_status bb_symbol_parse(const char *src, size_t dim, struct bb_symbol **out);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum bb_status bb_symbol_from_polynomial(const struct bb_polynomial *p, struct bb_symbol **out);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void bb_symbol_free(struct bb_symbol *s);

/**
 * Text form, e.g. `1 + log(t)`.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum bb_status bb_symbol_to_string(const struct bb_symbol *s, char **out);

/**
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum bb_status bb_symbol_to_json(const struct bb_symbol *s, char **out);

/**
 * Berezin transform coefficients up to total degree `degree`, as JSON.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum bb_status bb_berezin_series_json(const struct bb_symbol *s, uint32_t degree, char **out);

/**
 * Symbol whose Berezin transform is `target`. Returns `NotInRange` when
 * the range criterion fails; the message names the offending derivative.
 *
 * # Safety
 * `target` must be a live handle and `out` writable.
 */
enum bb_status bb_range_preimage(const struct bb_polynomial *target, struct bb_symbol **out);

/**
 * Symbol `u` with `T_(z^hol) T_(zbar^anti) = T_u`; both arrays have length `n`.
 *
 * # Safety
 * `hol` and `anti` must point to `n` readable values and `out` be writable.
 */
enum bb_status bb_product_symbol(const uint32_t *hol,
                                 const uint32_t *anti,
                                 size_t n,
                                 struct bb_symbol **out);

/**
 * Built-in example suite as a JSON report; `*passed` is 1 when nothing failed.
 *
 * # Safety
 * `out` and `passed` must be writable.
 */
enum bb_status bb_run_suite_json(size_t n,
                                 uint32_t degree,
                                 uint64_t seed,
                                 char **out,
                                 int32_t *passed);

/**
 * Run the command-line front end on `argv[0..argc]` (without the program
 * name) and return its exit code. Output is returned through the optional
 * `out_stdout` and `out_stderr`.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; the outputs may be null.
 */
int32_t bb_run_command(size_t argc, const char *const *argv, char **out_stdout, char **out_stderr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BERGBALL_H */
