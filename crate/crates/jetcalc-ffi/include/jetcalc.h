/* C interface to the jetcalc intersection-theory engine. */

#ifndef JETCALC_H
#define JETCALC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum JcStatus {
  JC_STATUS_OK = 0,
  JC_STATUS_NULL_POINTER = 1,
  JC_STATUS_INVALID_ARGUMENT = 2,
  JC_STATUS_PRECONDITION = 3,
  JC_STATUS_PARSE_ERROR = 4,
  /**
   * The computation ran but found no certificate within the cap.
   */
  JC_STATUS_NO_CERTIFICATE = 5,
} JcStatus;

/**
 * Opaque evaluation context for one tower geometry.
 */
typedef struct JcTower JcTower;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *jc_version(void);

/**
 * Fetch and clear the thread-local error message for the last failing
 * call. Returns an allocated string (free with [`jc_string_free`]) or
 * null when no error is pending.
 */
char *jc_last_error(void);

/**
 * Release a string allocated by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned through one of this
 * library's out-parameters (or [`jc_last_error`]) and not yet freed.
 */
void jc_string_free(char *s);

/**
 * Create a tower context for the complete intersection with ambient
 * dimension `ambient_dim` and codimension `codim`.
 *
 * # Safety
 * `out` must be null or point to writable storage for one pointer.
 */
enum JcStatus jc_tower_new(uint32_t ambient_dim, uint32_t codim, struct JcTower **out);

/**
 * Release a tower context.
 *
 * # Safety
 * `tower` must come from [`jc_tower_new`] and not be used afterwards.
 */
void jc_tower_free(struct JcTower *tower);

/**
 * Critical jet order of the tower, or 0 when the handle is null.
 *
 * # Safety
 * `tower` must be a live handle from [`jc_tower_new`] or null.
 */
uint32_t jc_tower_kappa(const struct JcTower *tower);

/**
 * Dimension of the intersection itself, or 0 when the handle is null.
 *
 * # Safety
 * `tower` must be a live handle from [`jc_tower_new`] or null.
 */
uint32_t jc_tower_dim(const struct JcTower *tower);

/**
 * Segre polynomials of the cotangent bundle twisted by `m`, as a JSON
 * document `{"N", "c", "m", "segre": [poly, ..]}`.
 *
 * # Safety
 * `tower` must be a live handle; `out` must be a valid pointer.
 */
enum JcStatus jc_segre_json(const struct JcTower *tower, int64_t m, char **out);

/**
 * Parse an expression, evaluate it at `level`, integrate, and return the
 * result: canonical text when `json` is false, a JSON term list
 * otherwise.
 *
 * # Safety
 * `tower` must be a live handle; `src` must point to a NUL-terminated
 * string; `out` must be a valid pointer.
 */
enum JcStatus jc_integrate_expr(const struct JcTower *tower,
                                uint32_t level,
                                const char *src,
                                bool json,
                                char **out);

/**
 * Run the Morse comparison and return the report JSON. Returns
 * `JC_STATUS_NO_CERTIFICATE` (with the JSON still written) when no bound
 * at most `delta_max` certifies.
 *
 * # Safety
 * `tower` must be a live handle; `out` must be a valid pointer.
 */
enum JcStatus jc_morse_json(const struct JcTower *tower,
                            uint32_t a,
                            uint32_t delta_max,
                            char **out);

/**
 * Run the numerical-positivity report and return its JSON. Returns
 * `JC_STATUS_NO_CERTIFICATE` (with the JSON still written) when some
 * partition stayed unresolved within the cap.
 *
 * # Safety
 * `tower` must be a live handle; `out` must be a valid pointer.
 */
enum JcStatus jc_positivity_json(const struct JcTower *tower,
                                 int64_t a,
                                 uint32_t d_max,
                                 char **out);

/**
 * Run the degree-estimate audit and return its JSON.
 *
 * # Safety
 * `tower` must be a live handle; `out` must be a valid pointer.
 */
enum JcStatus jc_audit_json(const struct JcTower *tower, char **out);

/**
 * Degeneracy-locus dimension count, as one-line JSON.
 *
 * # Safety
 * `out` must be null or point to writable storage for one pointer.
 */
enum JcStatus jc_degeneracy_json(uint32_t ambient_dim, uint32_t hypersurfaces, char **out);

/**
 * Verify the conjugate-partition determinant identity for all partitions
 * of weight up to `weight` over the formal sequence. Returns
 * `JC_STATUS_OK` when every identity holds.
 */
enum JcStatus jc_schur_verify(uint32_t weight);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JETCALC_H */
