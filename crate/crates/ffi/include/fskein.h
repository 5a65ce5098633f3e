#ifndef FSKEIN_H
#define FSKEIN_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define FSK_OK 0

#define FSK_ERR_NULL -1

#define FSK_ERR_UTF8 -2

#define FSK_ERR_PARSE -3

#define FSK_ERR_DOMAIN -4

#define FSK_ERR_PANIC -5

#define FSK_VERDICT_EQUAL 0

#define FSK_VERDICT_DISTINCT 1

#define FSK_VERDICT_UNKNOWN 2

#define FSK_END_O 0

#define FSK_END_OMEGA 1

/**
 * An element of the fraction group of an engine.
 */
typedef struct FskElement FskElement;

/**
 * A presentation with its word-problem engine.
 */
typedef struct FskEngine FskEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; valid until the next failure.
 */
const char *fsk_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void fsk_string_free(char *s);

/**
 * Engine for a preset such as `cleary:2` or `higman:4`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` writable.
 */
int32_t fsk_engine_from_preset(const char *name, struct FskEngine **out);

/**
 * Engine for a presentation in the text format (`colors:` and `rel:` lines).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
int32_t fsk_engine_from_text(const char *text, struct FskEngine **out);

/**
 * # Safety
 * `e` must be null or a live engine handle.
 */
void fsk_engine_free(struct FskEngine *e);

/**
 * Strategy name and budget, as `engine=… budget=… base=…`.
 *
 * # Safety
 * `e` must be a live engine handle and `out` writable.
 */
int32_t fsk_engine_describe(const struct FskEngine *e, char **out);

/**
 * Invariant factors of the abelianization of the T- and V-type groups, e.g. `Z^2 x Z/3`.
 *
 * # Safety
 * `e` must be a live engine handle and `out` writable.
 */
int32_t fsk_engine_abelianization(const struct FskEngine *e, char **out);

/**
 * Germ group presentation at `FSK_END_O` or `FSK_END_OMEGA`.
 *
 * # Safety
 * `e` must be a live engine handle and `out` writable.
 */
int32_t fsk_engine_germ(const struct FskEngine *e, int32_t end, char **out);

/**
 * Parse `frac(t ; π ; s)` or a generator word such as `[b1, hat.a2]`.
 *
 * # Safety
 * `e` must be a live engine handle, `text` a NUL-terminated string and `out` writable.
 */
int32_t fsk_element_parse(const struct FskEngine *e, const char *text, struct FskElement **out);

/**
 * # Safety
 * `g` must be null or a live element handle.
 */
void fsk_element_free(struct FskElement *g);

/**
 * `a · b`; both must come from the same engine.
 *
 * # Safety
 * `a` and `b` must be live element handles and `out` writable.
 */
int32_t fsk_element_multiply(const struct FskElement *a,
                             const struct FskElement *b,
                             struct FskElement **out);

/**
 * # Safety
 * `a` must be a live element handle and `out` writable.
 */
int32_t fsk_element_inverse(const struct FskElement *a, struct FskElement **out);

/**
 * Writes one of the `FSK_VERDICT_*` values.
 *
 * # Safety
 * `a` must be a live element handle and `verdict` writable.
 */
int32_t fsk_element_is_identity(const struct FskElement *a, int32_t *verdict);

/**
 * The reduced `frac(t ; π ; s)` form.
 *
 * # Safety
 * `a` must be a live element handle and `out` writable.
 */
int32_t fsk_element_to_string(const struct FskElement *a, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FSKEIN_H */
