#ifndef SYZYGY_FORGE_H
#define SYZYGY_FORGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SfStatus {
  SfStatus_Ok = 0,
  SfStatus_NullPointer = 1,
  SfStatus_InvalidUtf8 = 2,
  SfStatus_ParseError = 3,
  SfStatus_InvalidModulus = 4,
  SfStatus_BoundTooSmall = 5,
  SfStatus_PreconditionViolated = 6,
  SfStatus_BufferTooSmall = 7,
  SfStatus_Panic = 8,
} SfStatus;

/**
 * Opaque module handle.
 */
typedef struct SfModule SfModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *sf_last_error(void);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SfStatus sf_module_from_json(const char *json, struct SfModule **out);

/**
 * Built-in examples: F1, F2, rank5, nc3, buchs, curve3, curve4, omega:p:l,
 * line:a,b,...
 *
 * # Safety
 * `id` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SfStatus sf_module_from_example(const char *id, uint64_t p, struct SfModule **out);

/**
 * # Safety
 * `m` must come from this library and not be used afterwards. NULL is ignored.
 */
void sf_module_free(struct SfModule *m);

/**
 * Number of variables minus one.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SfStatus sf_module_n(const struct SfModule *m, uintptr_t *out);

/**
 * Ranks of the minimal free resolution F_0, F_1, ...
 *
 * # Safety
 * `out` must hold `cap` entries; `out_len` must be valid.
 */
enum SfStatus sf_betti_totals(const struct SfModule *m,
                              uintptr_t *out,
                              uintptr_t cap,
                              uintptr_t *out_len);

/**
 * h^i(M~(d)) for i = 0..n, d = lo..hi, row-major by i.
 *
 * # Safety
 * `out` must hold `cap` entries; `out_len` must be valid.
 */
enum SfStatus sf_sheaf_cohomology(const struct SfModule *m,
                                  int32_t lo,
                                  int32_t hi,
                                  int64_t *out,
                                  uintptr_t cap,
                                  uintptr_t *out_len);

/**
 * Classification result as JSON; free the string with `sf_string_free`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SfStatus sf_classify_json(const struct SfModule *m, uint64_t seed, char **out);

/**
 * # Safety
 * `s` must come from this library. NULL is ignored.
 */
void sf_string_free(char *s);

/**
 * Pfaffian of a 4x4 skew matrix (row-major), as a symmetric residue mod p.
 *
 * # Safety
 * `entries` must hold 16 values; `out` must be valid.
 */
enum SfStatus sf_pfaffian4(const int64_t *entries, uint64_t p, int64_t *out);

/**
 * h^i(P^m x P^n, O(a, b)) for i = 0..m+n.
 *
 * # Safety
 * `out` must hold `cap` entries; `out_len` must be valid.
 */
enum SfStatus sf_kunneth(uintptr_t m,
                         uintptr_t n,
                         int64_t a,
                         int64_t b,
                         int64_t *out,
                         uintptr_t cap,
                         uintptr_t *out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYZYGY_FORGE_H */
