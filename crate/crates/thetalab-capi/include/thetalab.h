#ifndef THETALAB_H
#define THETALAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes for all fallible entry points.
 */
typedef enum tl_status {
  TL_OK = 0,
  /**
   * A precondition on the arguments was violated.
   */
  TL_PRECONDITION = 1,
  /**
   * Arguments were required to be coprime and are not.
   */
  TL_NOT_COPRIME = 2,
  /**
   * Zero denominator.
   */
  TL_ZERO_DENOMINATOR = 3,
  /**
   * Allocation or other resource exhaustion.
   */
  TL_RESOURCE = 4,
  /**
   * A required out-pointer was null.
   */
  TL_NULL_POINTER = 5,
  /**
   * Any other error.
   */
  TL_OTHER = 6,
} tl_status;

/**
 * Opaque handle to a Liouville λ table.
 */
typedef struct tl_liouville_table tl_liouville_table;

/**
 * Closed-form quadratic Gauss sum: zero flag, phase as a multiple of
 * π/4, and the radicand r with |S| = √r when nonzero.
 */
typedef struct tl_gauss_sum {
  bool is_zero;
  /**
   * Phase exponent k in e^{iπk/4}, 0 ≤ k < 8.
   */
  uint8_t phase_eighths;
  uint64_t radicand;
} tl_gauss_sum;

/**
 * Differentiability verdict at a reduced rational. Field values:
 * 0 = zero derivative / difference quotient, 1 = infinite, 2 = none.
 */
typedef struct tl_verdict {
  int64_t num;
  int64_t den;
  /**
   * 1 iff the two-sided derivative exists (and is zero in the
   * normalization used by the library).
   */
  bool two_sided_zero;
  uint8_t right;
  uint8_t left;
  uint8_t symmetric;
  bool kappa_is_zero;
  /**
   * κ phase exponent k in e^{iπk/4} when κ ≠ 0.
   */
  uint8_t kappa_phase_eighths;
  /**
   * |κ| = 1/√den when κ ≠ 0, else 0.
   */
  double kappa_magnitude;
} tl_verdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Kronecker symbol (a/n), full domain.
 */
enum tl_status tl_kronecker(int64_t a, int64_t n, int32_t *out);

/**
 * Closed form for S(p, q) = Σ_{n mod p} e^{2πi q n²/p}, p ≥ 1,
 * gcd(p, q) = 1.
 */
enum tl_status tl_gauss_sum_closed(int64_t p, int64_t q, struct tl_gauss_sum *out);

/**
 * Classify the local behavior of the Riemann-type series at num/den.
 */
enum tl_status tl_classify(int64_t num, int64_t den, struct tl_verdict *out);

/**
 * |θ(−1/z) − √(z/i)·θ(z)| at z = re + i·im (im > 0), computed at the
 * given precision in bits and rounded to f64.
 */
enum tl_status tl_theta_transform_residual(double re,
                                           double im,
                                           uint32_t precision_bits,
                                           double *out);

/**
 * Build a table of λ(n) for 1 ≤ n ≤ limit. Returns null on failure
 * (limit = 0 or allocation failure).
 */
struct tl_liouville_table *tl_liouville_new(uintptr_t limit);

/**
 * λ(n) from a table; requires 1 ≤ n ≤ limit.
 */
enum tl_status tl_liouville_get(const struct tl_liouville_table *table, uintptr_t n, int8_t *out);

/**
 * Free a table created by `tl_liouville_new`. Null is a no-op.
 */
void tl_liouville_free(struct tl_liouville_table *table);

/**
 * Library version as a static NUL-terminated string.
 */
const char *tl_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* THETALAB_H */
