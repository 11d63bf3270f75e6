#ifndef DISCRETE_FARKAS_H
#define DISCRETE_FARKAS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DfkAssembly {
  DFK_ASSEMBLY_PRUNED = 0,
  DFK_ASSEMBLY_FULL = 1,
} DfkAssembly;

/**
 * Result of every fallible call.
 */
typedef enum DfkStatus {
  DFK_STATUS_OK = 0,
  DFK_STATUS_NULL_POINTER = 1,
  DFK_STATUS_INVALID_INSTANCE = 2,
  DFK_STATUS_NEGATIVE_ENTRIES = 3,
  DFK_STATUS_NONCOMPACT = 4,
  DFK_STATUS_TOO_LARGE = 5,
  DFK_STATUS_PARSE = 6,
  DFK_STATUS_BUFFER_TOO_SMALL = 7,
  DFK_STATUS_NOT_AVAILABLE = 8,
  DFK_STATUS_INTERNAL = 9,
} DfkStatus;

typedef enum DfkVerdict {
  DFK_VERDICT_FEASIBLE = 0,
  DFK_VERDICT_INFEASIBLE = 1,
} DfkVerdict;

/**
 * Outcome of [`dfk_check`]. Keeps the instance the certificate refers to.
 */
typedef struct DfkDecision DfkDecision;

/**
 * An integer system `Ax = b`.
 */
typedef struct DfkInstance DfkInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *dfk_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *dfk_version(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void dfk_string_free(char *s);

/**
 * Parses an instance from JSON text (`{"A": ..., "b": ..., "mode"?: ...}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DfkStatus dfk_instance_from_json(const char *json, struct DfkInstance **out);

/**
 * Builds an instance from a row-major `m x n` matrix and a length-`m` rhs.
 * The mode is inferred from the signs of the entries.
 *
 * # Safety
 * `a` must point to `m * n` values, `b` to `m` values, `out` must be valid.
 */
enum DfkStatus dfk_instance_new(size_t m,
                                size_t n,
                                const int64_t *a,
                                const int64_t *b,
                                struct DfkInstance **out);

/**
 * # Safety
 * `inst` must come from this library and not have been freed. NULL is ignored.
 */
void dfk_instance_free(struct DfkInstance *inst);

/**
 * Number of rows of `A`, or 0 for NULL.
 *
 * # Safety
 * `inst` must be NULL or a live instance.
 */
size_t dfk_instance_rows(const struct DfkInstance *inst);

/**
 * Number of columns of `A`, or 0 for NULL.
 *
 * # Safety
 * `inst` must be NULL or a live instance.
 */
size_t dfk_instance_cols(const struct DfkInstance *inst);

/**
 * Decides `Ax = b` over nonnegative integers. With `general` false a
 * negative entry fails with `NEGATIVE_ENTRIES`; with it true the instance is
 * decided through its nonnegative lift.
 *
 * # Safety
 * `inst` must be a live instance and `out` a valid pointer.
 */
enum DfkStatus dfk_check(const struct DfkInstance *inst,
                         enum DfkAssembly assembly,
                         bool general,
                         struct DfkDecision **out);

/**
 * # Safety
 * `d` must come from [`dfk_check`] and not have been freed. NULL is ignored.
 */
void dfk_decision_free(struct DfkDecision *d);

/**
 * # Safety
 * `d` must be a live decision and `out` a valid pointer.
 */
enum DfkStatus dfk_decision_verdict(const struct DfkDecision *d, enum DfkVerdict *out);

/**
 * Copies the witness `x` into `buf` (capacity `len`) and stores its length
 * in `written`. Fails with `NOT_AVAILABLE` for infeasible decisions and
 * `BUFFER_TOO_SMALL` (with `written` set) when `len` is short.
 *
 * # Safety
 * `d` must be a live decision, `buf` must hold `len` values, `written` valid.
 */
enum DfkStatus dfk_decision_witness(const struct DfkDecision *d,
                                    uint64_t *buf,
                                    size_t len,
                                    size_t *written);

/**
 * Certificate of a feasible decision as JSON, released with
 * [`dfk_string_free`]. For general instances it refers to the lifted system.
 *
 * # Safety
 * `d` must be a live decision and `out` a valid pointer.
 */
enum DfkStatus dfk_decision_certificate_json(const struct DfkDecision *d, char **out);

/**
 * The instance the decision's certificate refers to, as a new handle.
 *
 * # Safety
 * `d` must be a live decision and `out` a valid pointer.
 */
enum DfkStatus dfk_decision_certified_instance(const struct DfkDecision *d,
                                               struct DfkInstance **out);

/**
 * Checks a certificate JSON against a nonnegative instance; `valid` is set
 * to whether the polynomial identity holds exactly.
 *
 * # Safety
 * `inst` must be a live instance, `cert_json` NUL-terminated, `valid` valid.
 */
enum DfkStatus dfk_verify_certificate(const struct DfkInstance *inst,
                                      const char *cert_json,
                                      bool *valid);

/**
 * Exact number of nonnegative solutions as a decimal string, released with
 * [`dfk_string_free`]. Requires nonnegative data without zero columns.
 *
 * # Safety
 * `inst` must be a live instance and `out` a valid pointer.
 */
enum DfkStatus dfk_count(const struct DfkInstance *inst, char **out);

/**
 * Full-assembly LP size and degree bound of a nonnegative instance. The
 * sizes are 0 when no LP is needed (`b = 0` or a negative degree bound).
 *
 * # Safety
 * `inst` must be a live instance; the out pointers must be valid.
 */
enum DfkStatus dfk_dims(const struct DfkInstance *inst,
                        uint64_t *vars,
                        uint64_t *rows,
                        int64_t *degree_bound);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISCRETE_FARKAS_H */
