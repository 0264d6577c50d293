#ifndef SIEGELFC_H
#define SIEGELFC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes shared by every function in this library.
typedef enum SfcStatus {
  SFC_STATUS_OK = 0,
  SFC_STATUS_NULL_ARGUMENT = 1,
  SFC_STATUS_INVALID_INPUT = 2,
  SFC_STATUS_PARSE = 3,
  SFC_STATUS_PRECISION = 4,
  SFC_STATUS_IO = 5,
  SFC_STATUS_PANIC = 6,
} SfcStatus;

// The class group of an imaginary quadratic field.
typedef struct SfcClassGroup SfcClassGroup;

// A half-integral weight form given by its coefficient table.
typedef struct SfcHalfForm SfcHalfForm;

// A Siegel modular form of degree 2 with exact coefficients.
typedef struct SfcSiegelForm SfcSiegelForm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *sfc_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void sfc_string_free(char *s);

// Maass lift of φ_{weight,1} (weight 10 or 12), coefficients for |disc| < prec.
//
// # Safety
// `out` must be valid for writes.
enum SfcStatus sfc_siegel_maass_lift(int64_t weight, int64_t prec, struct SfcSiegelForm **out);

// Loads a Siegel form from a JSON coefficient table.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be valid for writes.
enum SfcStatus sfc_siegel_from_json(const char *json, struct SfcSiegelForm **out);

// a(F, (a, b, c)) as a "num/den" string.
//
// # Safety
// `form` must be a live handle; `out` must be valid for writes.
enum SfcStatus sfc_siegel_coefficient(const struct SfcSiegelForm *form,
                                      int64_t a,
                                      int64_t b,
                                      int64_t c,
                                      char **out);

// The form's coefficient table as JSON.
//
// # Safety
// `form` must be a live handle; `out` must be valid for writes.
enum SfcStatus sfc_siegel_to_json(const struct SfcSiegelForm *form, char **out);

// # Safety
// `form` must be null or a live handle, not used afterwards.
void sfc_siegel_free(struct SfcSiegelForm *form);

// Half-integral weight form extracted from `form` at `p` (1 or an odd prime),
// coefficients for 1 ≤ m < prec.
//
// # Safety
// `form` must be a live handle; `out` must be valid for writes.
enum SfcStatus sfc_half_extract(const struct SfcSiegelForm *form,
                                uint64_t p,
                                uint64_t prec,
                                struct SfcHalfForm **out);

// Eichler–Zagier image of φ_{weight,1} (weight 10 or 12), n < prec.
//
// # Safety
// `out` must be valid for writes.
enum SfcStatus sfc_half_ez(int64_t weight, int64_t prec, struct SfcHalfForm **out);

// Writes κ (weight κ + 1/2), the level and the precision bound.
//
// # Safety
// `form` must be a live handle; the out-pointers must be valid for writes.
enum SfcStatus sfc_half_info(const struct SfcHalfForm *form,
                             int64_t *kappa,
                             uint64_t *level,
                             uint64_t *prec);

// a(f, n) as a "num/den" string.
//
// # Safety
// `form` must be a live handle; `out` must be valid for writes.
enum SfcStatus sfc_half_coefficient(const struct SfcHalfForm *form, uint64_t n, char **out);

// The form's coefficient table as JSON.
//
// # Safety
// `form` must be a live handle; `out` must be valid for writes.
enum SfcStatus sfc_half_to_json(const struct SfcHalfForm *form, char **out);

// # Safety
// `form` must be null or a live handle, not used afterwards.
void sfc_half_free(struct SfcHalfForm *form);

// Class group of the fundamental discriminant −d (`d` may be given with
// either sign).
//
// # Safety
// `out` must be valid for writes.
enum SfcStatus sfc_class_group_new(int64_t d, struct SfcClassGroup **out);

// # Safety
// `group` must be a live handle; `h` must be valid for writes.
enum SfcStatus sfc_class_group_order(const struct SfcClassGroup *group, uint64_t *h);

// The group as JSON: discriminant, class number, reduced forms, generators.
//
// # Safety
// `group` must be a live handle; `out` must be valid for writes.
enum SfcStatus sfc_class_group_to_json(const struct SfcClassGroup *group, char **out);

// # Safety
// `group` must be null or a live handle, not used afterwards.
void sfc_class_group_free(struct SfcClassGroup *group);

// R(F, K, Λ) for the character with index `chi` (0 is trivial).
//
// # Safety
// `form` and `group` must be live handles; `re` and `im` valid for writes.
enum SfcStatus sfc_bessel_period(const struct SfcSiegelForm *form,
                                 const struct SfcClassGroup *group,
                                 uint64_t chi,
                                 double *re,
                                 double *im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIEGELFC_H */
