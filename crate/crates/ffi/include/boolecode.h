#ifndef BOOLECODE_H
#define BOOLECODE_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define BC_UNSET SIZE_MAX



typedef enum BcStatus {
  BC_STATUS_OK = 0,
  BC_STATUS_NULL_POINTER = 1,
  BC_STATUS_INVALID_UTF8 = 2,
  BC_STATUS_INVALID_CONFIG = 3,
  BC_STATUS_INVALID_ARGUMENT = 4,
  BC_STATUS_SIMULATION = 5,
  BC_STATUS_SERIALIZATION = 6,
  BC_STATUS_PANIC = 7,
} BcStatus;

typedef enum BcSchemeKind {
  BC_SCHEME_KIND_LCC_DIRECT = 0,
  BC_SCHEME_KIND_ANF = 1,
  BC_SCHEME_KIND_DNF = 2,
  BC_SCHEME_KIND_PTF = 3,
  BC_SCHEME_KIND_D_PTF = 4,
  BC_SCHEME_KIND_DATA_LOG = 5,
  BC_SCHEME_KIND_DATA_AUG = 6,
} BcSchemeKind;

typedef enum BcStrategy {
  BC_STRATEGY_RANDOM_REPLACE = 0,
  BC_STRATEGY_ADDITIVE_OFFSET = 1,
  BC_STRATEGY_CODEWORD_TARGETED = 2,
  BC_STRATEGY_ERASE = 3,
} BcStrategy;

typedef enum BcFailure {
  BC_FAILURE_NONE = 0,
  BC_FAILURE_WRONG_VALUE = 1,
  BC_FAILURE_DECODE_FAILURE = 2,
} BcFailure;

/**
 * Opaque scheme handle.
 */
typedef struct BcScheme BcScheme;

/**
 * Formula inputs; optional fields take [`BC_UNSET`].
 */
typedef struct BcThresholdParams {
  size_t n;
  size_t k;
  size_t weight;
  size_t degree;
  size_t d;
  size_t q;
} BcThresholdParams;

typedef struct BcThreshold {
  size_t beta;
  bool feasible;
} BcThreshold;

typedef struct BcTrialResult {
  bool success;
  enum BcFailure failure;
} BcTrialResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Borrowed; valid
 * until the next failing call on this thread.
 */
const char *bc_last_error(void);

/**
 * Library version, static storage.
 */
const char *bc_version(void);

/**
 * Releases a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void bc_string_free(char *s);

size_t bc_outer_bound(size_t n, size_t k);

/**
 * Closed-form threshold of a scheme kind.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum BcStatus bc_security_threshold(enum BcSchemeKind kind,
                                    struct BcThresholdParams params,
                                    struct BcThreshold *out);

/**
 * Builds a scheme from a JSON config
 * (`{"scheme": "anf", "n": 10, "k": 4, "function": {...}}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` a valid pointer.
 */
enum BcStatus bc_scheme_from_json(const char *json, struct BcScheme **out);

/**
 * Null is a no-op.
 *
 * # Safety
 * `scheme` must come from [`bc_scheme_from_json`] and not be freed twice.
 */
void bc_scheme_free(struct BcScheme *scheme);

/**
 * # Safety
 * `scheme` must be a live handle; `out` a valid pointer.
 */
enum BcStatus bc_scheme_threshold(const struct BcScheme *scheme, struct BcThreshold *out);

/**
 * Static description as JSON; free with [`bc_string_free`].
 *
 * # Safety
 * `scheme` must be a live handle; `out` a valid pointer.
 */
enum BcStatus bc_scheme_summary_json(const struct BcScheme *scheme, char **out);

/**
 * One seeded trial with `b` adversaries.
 *
 * # Safety
 * `scheme` must be a live handle; `out` a valid pointer.
 */
enum BcStatus bc_scheme_run_trial(const struct BcScheme *scheme,
                                  size_t b,
                                  enum BcStrategy strategy,
                                  uint64_t seed,
                                  struct BcTrialResult *out);

/**
 * Threshold sweep over `b = 0..=min(N, outer bound + 1)`; the report is
 * written as JSON. Free with [`bc_string_free`].
 *
 * # Safety
 * `scheme` must be a live handle; `out` a valid pointer.
 */
enum BcStatus bc_scheme_sweep_json(const struct BcScheme *scheme,
                                   size_t trials,
                                   enum BcStrategy strategy,
                                   uint64_t seed,
                                   char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOOLECODE_H */
