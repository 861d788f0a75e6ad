#ifndef MULTIZERO_H
#define MULTIZERO_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MzStatus {
  MZ_STATUS_OK = 0,
  MZ_STATUS_NULL_POINTER = 1,
  MZ_STATUS_INVALID_UTF8 = 2,
  MZ_STATUS_PARSE = 3,
  MZ_STATUS_DOMAIN = 4,
  MZ_STATUS_TOO_LARGE = 5,
  MZ_STATUS_PANIC = 6,
} MzStatus;

typedef enum MzTheorem4 {
  MZ_THEOREM4_MEIXNER1 = 0,
  MZ_THEOREM4_MEIXNER2 = 1,
  MZ_THEOREM4_CHARLIER3 = 2,
} MzTheorem4;

typedef enum MzVerdict {
  MZ_VERDICT_HOLDS = 0,
  MZ_VERDICT_VIOLATED = 1,
  MZ_VERDICT_UNDECIDED = 2,
} MzVerdict;

/**
 * Opaque coefficient vector in a chosen basis.
 */
typedef struct MzExpansion MzExpansion;

/**
 * Opaque orthogonal family.
 */
typedef struct MzFamily MzFamily;

/**
 * Opaque bound evaluation.
 */
typedef struct MzReport MzReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL.
 *
 * The pointer stays valid until the next call into the library on the same
 * thread. It must not be freed.
 */
const char *mz_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void mz_string_free(char *s);

/**
 * Builds a family by name: `hahn`, `chebyshev`, `krawtchouk`, `meixner` or
 * `charlier`.
 *
 * `n` is the support size parameter for the finite families. `p1` and `p2`
 * carry the remaining parameters in declaration order: `(alpha, beta)` for
 * Hahn, `q` for Krawtchouk, `(beta, q)` for Meixner, `lambda` for Charlier.
 * Unused parameters may be NULL.
 *
 * # Safety
 * String arguments must be NUL terminated or NULL. `out` must be writable.
 */
enum MzStatus mz_family_new(const char *kind,
                            size_t n,
                            const char *p1,
                            const char *p2,
                            struct MzFamily **out);

/**
 * Translates the support of `fam` by `by`.
 *
 * # Safety
 * `fam` must be a live handle.
 */
enum MzStatus mz_family_shift(struct MzFamily *fam, int64_t by);

/**
 * # Safety
 * `fam` must come from [`mz_family_new`] or be NULL.
 */
void mz_family_free(struct MzFamily *fam);

/**
 * Weight at `x` as `"p/q"`.
 *
 * # Safety
 * `fam` must be a live handle and `out` writable.
 */
enum MzStatus mz_family_weight(const struct MzFamily *fam, int64_t x, char **out);

/**
 * Squared normalized value at `(k, x)`. Exact families give `"p/q"`, the
 * others a rational multiple of their unit such as `"3/2*exp(-1/1)"`.
 *
 * # Safety
 * `fam` must be a live handle and `out` writable.
 */
enum MzStatus mz_family_g_squared(const struct MzFamily *fam, size_t k, int64_t x, char **out);

/**
 * Tail sum of squared values at `s` from degree `mu` upward.
 *
 * # Safety
 * `fam` must be a live handle and `out` writable.
 */
enum MzStatus mz_family_tail_sum(const struct MzFamily *fam, int64_t s, size_t mu, char **out);

/**
 * Coefficients `a_0..a_n` given as a comma separated list, in the basis
 * `monomial`, `krawtchouk` or `laguerre`. `alpha` is required only for
 * `laguerre`.
 *
 * # Safety
 * String arguments must be NUL terminated or NULL. `out` must be writable.
 */
enum MzStatus mz_expansion_new(const char *basis,
                               const char *alpha,
                               const char *coeffs,
                               struct MzExpansion **out);

/**
 * Multiplicity of the zero at the distinguished point.
 *
 * # Safety
 * `exp` must be a live handle and `out` writable.
 */
enum MzStatus mz_expansion_multiplicity(const struct MzExpansion *exp, size_t *out);

/**
 * # Safety
 * `exp` must come from [`mz_expansion_new`] or be NULL.
 */
void mz_expansion_free(struct MzExpansion *exp);

/**
 * # Safety
 * `exp` must be a live handle and `out` writable.
 */
enum MzStatus mz_check_eq1(const struct MzExpansion *exp, struct MzReport **out);

/**
 * # Safety
 * `exp` must be a live handle and `out` writable.
 */
enum MzStatus mz_check_eq2(const struct MzExpansion *exp, struct MzReport **out);

/**
 * # Safety
 * `exp` must be a live handle, `q` a NUL terminated rational and `out`
 * writable.
 */
enum MzStatus mz_check_eq3(const struct MzExpansion *exp, const char *q, struct MzReport **out);

/**
 * Weighted L2 bound for a zero of order `mu` at the support point `s`.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum MzStatus mz_check_ozl2(const struct MzExpansion *exp,
                            const struct MzFamily *fam,
                            int64_t s,
                            size_t mu,
                            struct MzReport **out);

/**
 * Bound for a zero of order `mu` at a point `s` outside the support.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum MzStatus mz_check_condg2(const struct MzExpansion *exp,
                              const struct MzFamily *fam,
                              int64_t s,
                              size_t mu,
                              struct MzReport **out);

/**
 * Closed form bounds for the Meixner and Charlier weights.
 *
 * # Safety
 * `exp` must be a live handle, `q` a NUL terminated rational and `out`
 * writable.
 */
enum MzStatus mz_check_theorem4(const struct MzExpansion *exp,
                                enum MzTheorem4 which,
                                const char *q,
                                struct MzReport **out);

/**
 * # Safety
 * `rep` must be a live handle and `out` writable.
 */
enum MzStatus mz_report_verdict(const struct MzReport *rep, enum MzVerdict *out);

/**
 * Whether the inequality was met with equality.
 *
 * # Safety
 * `rep` must be a live handle and `out` writable.
 */
enum MzStatus mz_report_sharp(const struct MzReport *rep, bool *out);

/**
 * The report as a JSON object, same fields as the command line tool.
 *
 * # Safety
 * `rep` must be a live handle and `out` writable.
 */
enum MzStatus mz_report_json(const struct MzReport *rep, char **out);

/**
 * # Safety
 * `rep` must come from one of the `mz_check_*` functions or be NULL.
 */
void mz_report_free(struct MzReport *rep);

/**
 * Checks that the monomial coefficients vanish to order `mu` at one.
 *
 * # Safety
 * `coeffs` must be NUL terminated and `out` writable.
 */
enum MzStatus mz_verify_witness(const char *coeffs, size_t mu, bool *out);

/**
 * Largest multiplicity at one over degree `n` polynomials with coefficients
 * from `alphabet`, returned as JSON.
 *
 * # Safety
 * `alphabet` must be NUL terminated and `out` writable.
 */
enum MzStatus mz_search(size_t n, const char *alphabet, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MULTIZERO_H */
