#ifndef BLOCKGLUE_H
#define BLOCKGLUE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdint.h>

#define BG_OK 0

#define BG_ERR_NULL 1

#define BG_ERR_UTF8 2

#define BG_ERR_SYNTAX 3

#define BG_ERR_NOT_SFT 4

#define BG_ERR_EMPTY 5

#define BG_ERR_NOT_BINARY 6

#define BG_ERR_INVALID_ARGUMENT 7

#define BG_ERR_TOO_LARGE 8

#define BG_ERR_NUMERIC 9

#define BG_ERR_STATE 10

#define BG_ERR_IO 11

#define BG_ERR_NOT_BLOCK_GLUING 12

#define BG_ERR_PANIC 13

/**
 * Opaque parsed subshift spec.
 */
typedef struct BgSpec BgSpec;

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *bg_last_error(void);

/**
 * Library version, a static string.
 */
const char *bg_version(void);

/**
 * Parses spec-file text into a new handle.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
int bg_spec_parse(const char *text, struct BgSpec **out);

/**
 * Frees a handle from `bg_spec_parse`. Null is ignored.
 *
 * # Safety
 * `spec` must come from `bg_spec_parse` and not be used afterwards.
 */
void bg_spec_free(struct BgSpec *spec);

/**
 * Entropy enclosure `[lo, hi]` (natural log) of an SFT with `hi - lo <= tol`.
 *
 * # Safety
 * Pointers must be valid.
 */
int bg_entropy(const struct BgSpec *spec, double tol, double *lo, double *hi);

/**
 * Sets `*result` to 1 if the subshift is c-block-gluing, 0 otherwise.
 * Specs with forbidden families get bounded evidence only.
 *
 * # Safety
 * Pointers must be valid.
 */
int bg_is_block_gluing(const struct BgSpec *spec, uint32_t c, int *result);

/**
 * Least `c <= c_max` with the SFT c-block-gluing, or -1.
 *
 * # Safety
 * Pointers must be valid.
 */
int bg_min_gluing_constant(const struct BgSpec *spec, uint32_t c_max, int64_t *result);

/**
 * `|L(n)|` of an SFT. Fails with `BG_ERR_TOO_LARGE` past `u64`.
 *
 * # Safety
 * Pointers must be valid.
 */
int bg_language_count(const struct BgSpec *spec, uint32_t n, uint64_t *result);

/**
 * Runs the minimal-entropy search for `c` and writes the JSON report to
 * `*json` (free with `bg_string_free`). `max_order = 0` keeps the default.
 *
 * # Safety
 * `json` must be a valid pointer.
 */
int bg_scan(uint32_t c, double budget_seconds, uint32_t max_order, char **json);

/**
 * Frees a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void bg_string_free(char *s);

#endif  /* BLOCKGLUE_H */
