#ifndef BRAIDED_RMATRIX_H
#define BRAIDED_RMATRIX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every function.
enum BrmStatus
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  BRM_STATUS_OK = 0,
  BRM_STATUS_NULL_POINTER = 1,
  BRM_STATUS_INVALID_ARGUMENT = 2,
  BRM_STATUS_DIMENSION = 3,
  BRM_STATUS_SINGULAR = 4,
  BRM_STATUS_POLE_PROXIMITY = 5,
  BRM_STATUS_NOT_PROPORTIONAL = 6,
  BRM_STATUS_WRONG_MODEL = 7,
  BRM_STATUS_BRANCH_CUT = 8,
  BRM_STATUS_SINGULAR_EXCHANGE = 9,
  BRM_STATUS_MEMORY_BOUND = 10,
  BRM_STATUS_SAMPLING_EXHAUSTED = 11,
  BRM_STATUS_IO = 12,
  BRM_STATUS_BUFFER_TOO_SMALL = 13,
  BRM_STATUS_NOT_APPLICABLE = 14,
  BRM_STATUS_PANIC = 15,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum BrmStatus BrmStatus;
#else
typedef int32_t BrmStatus;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

// Quantum matrix family; passed to `brm_model_eval` as its integer value.
enum BrmFamily
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  BRM_FAMILY_A = 0,
  BRM_FAMILY_B = 1,
  BRM_FAMILY_C = 2,
  BRM_FAMILY_D = 3,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum BrmFamily BrmFamily;
#else
typedef int32_t BrmFamily;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

// Opaque model handle.
typedef struct BrmModel BrmModel;

// Complex number with the layout of `double[2]`.
typedef struct BrmComplex {
  double re;
  double im;
} BrmComplex;

// Outcome of one check.
typedef struct BrmCheckResult {
  double max_relative;
  double tolerance;
  // 1 when every sample passed.
  int32_t passed;
  // Number of evaluated samples.
  size_t samples;
} BrmCheckResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates a model from its name (`csg`, `cp2`, `su3so3`, `gl44`).
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer. The
// handle written to `*out` must be released with `brm_model_free`.
BrmStatus brm_model_new(const char *name, struct BrmModel **out);

// Releases a handle; null is ignored.
//
// # Safety
// `model` must be null or a handle from `brm_model_new` not yet freed.
void brm_model_free(struct BrmModel *model);

// Writes the dimension `d` of the vector representation.
//
// # Safety
// `model` must be a live handle and `out` a valid pointer.
BrmStatus brm_model_dim(const struct BrmModel *model, size_t *out);

// Evaluates one quantum family (a `BrmFamily` value) at `(p, λ)` into a
// row-major `d²×d²` buffer. `λ` is ignored for `B` and `C`.
//
// # Safety
// `model` must be a live handle; `out` must point to `len` writable elements.
BrmStatus brm_model_eval(const struct BrmModel *model,
                         int32_t family,
                         struct BrmComplex p,
                         struct BrmComplex lambda,
                         struct BrmComplex *out,
                         size_t len);

// Runs a catalogue check (e.g. `"QYBE_A"`) at `samples` seeded points with the default tolerances.
//
// Returns `BRM_STATUS_NOT_APPLICABLE` when the identity is not a property of the model.
//
// # Safety
// `model` must be a live handle, `check` a NUL-terminated string, `out` a valid pointer.
BrmStatus brm_run_check(const struct BrmModel *model,
                        const char *check,
                        size_t samples,
                        uint64_t seed,
                        struct BrmCheckResult *out);

// Relative residual of `[t(λ), t(μ)]` after normal ordering, for `n_sites` 1 or 2.
//
// # Safety
// `model` must be a live handle and `out` a valid pointer.
BrmStatus brm_transfer_commutator(const struct BrmModel *model,
                                  struct BrmComplex p,
                                  struct BrmComplex lambda,
                                  struct BrmComplex mu,
                                  size_t n_sites,
                                  double *out);

// Copies the calling thread's last error message, NUL-terminated and truncated to `len`.
//
// Returns the full message length excluding the terminator.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t brm_last_error(char *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRAIDED_RMATRIX_H */
