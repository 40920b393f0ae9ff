#ifndef FFRACE_H
#define FFRACE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FfraceStatus {
  FFRACE_STATUS_OK = 0,
  FFRACE_STATUS_NULL_POINTER = 1,
  FFRACE_STATUS_INVALID_UTF8 = 2,
  FFRACE_STATUS_INVALID_ARGUMENT = 3,
  FFRACE_STATUS_NOT_A_UNIT = 4,
  FFRACE_STATUS_CONSISTENCY = 5,
  FFRACE_STATUS_BUFFER_TOO_SMALL = 6,
  FFRACE_STATUS_OVERFLOW = 7,
  FFRACE_STATUS_PANIC = 8,
} FfraceStatus;

/**
 * Opaque handle: a field, a modulus and everything cached about them.
 */
typedef struct FfraceContext FfraceContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a context for `field` (e.g. "F3") and `modulus` (e.g. "T^2+1").
 *
 * # Safety
 * `field` and `modulus` must be nul-terminated strings; `out` must be writable.
 */
enum FfraceStatus ffrace_context_new(const char *field,
                                     const char *modulus,
                                     struct FfraceContext **out);

/**
 * # Safety
 * `ctx` must come from [`ffrace_context_new`] and not be used afterwards. Null is ignored.
 */
void ffrace_context_free(struct FfraceContext *ctx);

/**
 * Number of residue classes, M'. Zero for a null context.
 *
 * # Safety
 * `ctx` must be null or a live context.
 */
size_t ffrace_class_count(const struct FfraceContext *ctx);

/**
 * Polynomial literal of class `index`; free with [`ffrace_string_free`].
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum FfraceStatus ffrace_class_label(const struct FfraceContext *ctx, size_t index, char **out);

/**
 * Monic irreducible counts of degree `degree` by sieving, one per class.
 *
 * # Safety
 * `ctx` must be a live context; `out` must have room for `len` values.
 */
enum FfraceStatus ffrace_count_sieve(const struct FfraceContext *ctx,
                                     uint32_t degree,
                                     uint64_t *out,
                                     size_t len);

/**
 * Monic irreducible counts of degree `degree` from the explicit formula.
 *
 * # Safety
 * `ctx` must be a live context; `out` must have room for `len` values.
 */
enum FfraceStatus ffrace_count_explicit(const struct FfraceContext *ctx,
                                        uint32_t degree,
                                        uint64_t *out,
                                        size_t len);

/**
 * Counts as JSON `{"N":..,"source":..,"counts":{"<class>":"<decimal>",...}}`, routed
 * to the sieve or the explicit formula by degree.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum FfraceStatus ffrace_count_json(const struct FfraceContext *ctx, uint32_t degree, char **out);

/**
 * Tie certificates for every stabilizing matrix and every residue, as a JSON array.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum FfraceStatus ffrace_ties_json(const struct FfraceContext *ctx, char **out);

/**
 * Message for the last failed call on this thread, or null. Valid until the next failing call.
 */
const char *ffrace_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ffrace_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FFRACE_H */
