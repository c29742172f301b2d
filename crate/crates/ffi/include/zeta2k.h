#ifndef ZETA2K_H
#define ZETA2K_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum Zeta2kBernoulliMethod {
  ZETA2K_BERNOULLI_METHOD_RECURRENCE = 0,
  ZETA2K_BERNOULLI_METHOD_SERIES_DIVISION = 1,
} Zeta2kBernoulliMethod;

typedef enum Zeta2kIdentity {
  ZETA2K_IDENTITY_THEOREM = 0,
  ZETA2K_IDENTITY_COROLLARY = 1,
} Zeta2kIdentity;

/**
 * Result codes. `Ok` is zero.
 */
typedef enum Zeta2kStatus {
  ZETA2K_STATUS_OK = 0,
  ZETA2K_STATUS_NULL_POINTER = 1,
  ZETA2K_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Input outside the domain: branch cut, pole or `w = 1`.
   */
  ZETA2K_STATUS_DOMAIN = 3,
  ZETA2K_STATUS_NON_FINITE = 4,
  ZETA2K_STATUS_INSUFFICIENT_TERMS = 5,
  ZETA2K_STATUS_PANIC = 6,
} Zeta2kStatus;

/**
 * Opaque table of exact Bernoulli numbers `B_0..B_n`.
 */
typedef struct Zeta2kBernoulliTable Zeta2kBernoulliTable;

typedef struct Zeta2kComplex {
  double re;
  double im;
} Zeta2kComplex;

typedef struct Zeta2kVerifyReport {
  struct Zeta2kComplex lhs;
  struct Zeta2kComplex rhs_partial;
  struct Zeta2kComplex tail_estimate;
  double remainder_bound;
  double discrepancy;
  double evaluation_epsilon;
  bool pass;
} Zeta2kVerifyReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or NULL. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *zeta2k_last_error_message(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a pointer obtained from this library that has not been
 * freed yet.
 */
void zeta2k_string_free(char *s);

/**
 * Builds `B_0..B_n` with the chosen method.
 *
 * # Safety
 * `out` must be NULL or valid for writing one pointer.
 */
enum Zeta2kStatus zeta2k_bernoulli_new(size_t n,
                                       enum Zeta2kBernoulliMethod method,
                                       struct Zeta2kBernoulliTable **out);

/**
 * Number of entries (`n + 1`), or 0 for NULL.
 *
 * # Safety
 * `table` must be NULL or a live handle.
 */
size_t zeta2k_bernoulli_len(const struct Zeta2kBernoulliTable *table);

/**
 * Writes `B_k` as a newly allocated `"p/q"` string (or `"p"` when integral).
 *
 * # Safety
 * `table` must be NULL or a live handle; `out` must be NULL or writable.
 */
enum Zeta2kStatus zeta2k_bernoulli_get(const struct Zeta2kBernoulliTable *table,
                                       size_t k,
                                       char **out);

/**
 * Releases a table. NULL is ignored.
 *
 * # Safety
 * `table` must be NULL or a live handle, which is invalid afterwards.
 */
void zeta2k_bernoulli_free(struct Zeta2kBernoulliTable *table);

/**
 * `ζ(2m) = q·π^{2m}`: writes `q` as a `"p/q"` string and the rounded value.
 * Either out-pointer may be NULL.
 *
 * # Safety
 * Non-NULL out-pointers must be writable.
 */
enum Zeta2kStatus zeta2k_zeta_even(uint32_t m, char **out_q, double *out_value);

/**
 * Checks an identity at `input` with `terms` series terms.
 *
 * # Safety
 * `out` must be NULL or writable.
 */
enum Zeta2kStatus zeta2k_verify(enum Zeta2kIdentity identity,
                                struct Zeta2kComplex input,
                                uint64_t terms,
                                struct Zeta2kVerifyReport *out);

/**
 * Truncated product `P_N(z)` for `e^z - w` with `2N + 1` zeros.
 *
 * # Safety
 * `out` must be NULL or writable.
 */
enum Zeta2kStatus zeta2k_hadamard_product(struct Zeta2kComplex w,
                                          struct Zeta2kComplex z,
                                          uint64_t half_count,
                                          struct Zeta2kComplex *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ZETA2K_H */
