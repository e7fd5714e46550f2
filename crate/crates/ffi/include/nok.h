#ifndef NOK_H
#define NOK_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Zero is success.
typedef enum NokStatus {
  NOK_STATUS_OK = 0,
  NOK_STATUS_NULL_POINTER = 1,
  NOK_STATUS_INVALID_UTF8 = 2,
  // Malformed input text; the message carries line and column.
  NOK_STATUS_PARSE_ERROR = 3,
  // The ideal class or arguments are outside what the library supports.
  NOK_STATUS_DOMAIN_ERROR = 4,
  NOK_STATUS_VERTEX_LIMIT = 5,
  NOK_STATUS_PANIC = 6,
} NokStatus;

// A parsed, classified monomial ideal.
typedef struct NokIdeal NokIdeal;

// An exact rational polyhedron.
typedef struct NokPolyhedron NokPolyhedron;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call into this library on the same thread.
const char *nok_last_error_message(void);

// Caps the number of vertices a double-description run may produce.
void nok_set_max_vertices(uintptr_t limit);

// Parses ideal-file text (`vars:` plus `gens:` or `components:`).
//
// # Safety
// `text` must be a NUL-terminated string and `out` writable.
enum NokStatus nok_ideal_parse(const char *text, struct NokIdeal **out);

// # Safety
// `ideal` must come from `nok_ideal_parse` and not be freed twice. Null is ignored.
void nok_ideal_free(struct NokIdeal *ideal);

// # Safety
// `ideal` must be a live handle and `out` writable.
enum NokStatus nok_ideal_nvars(const struct NokIdeal *ideal, uintptr_t *out);

// # Safety
// `ideal` must be a live handle and `out` writable.
enum NokStatus nok_newton_polyhedron(const struct NokIdeal *ideal, struct NokPolyhedron **out);

// # Safety
// `ideal` must be a live handle and `out` writable.
enum NokStatus nok_symbolic_polyhedron(const struct NokIdeal *ideal, struct NokPolyhedron **out);

// # Safety
// `p` must come from this library and not be freed twice. Null is ignored.
void nok_polyhedron_free(struct NokPolyhedron *p);

// Maximal dimension of a compact face.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum NokStatus nok_polyhedron_mdc(const struct NokPolyhedron *p, uintptr_t *out);

// # Safety
// `p` must be a live handle and `out` writable.
enum NokStatus nok_polyhedron_vertex_count(const struct NokPolyhedron *p, uintptr_t *out);

// Facets, vertices, rays and mdc as JSON; rationals are `"p/q"` strings.
//
// # Safety
// `p` must be a live handle and `out` writable. Free the string with `nok_string_free`.
enum NokStatus nok_polyhedron_to_json(const struct NokPolyhedron *p, char **out);

// Spreads, vertex denominators, `c`, `D` and the svd and sgt bounds as JSON.
//
// # Safety
// `ideal` must be a live handle and `out` writable. Free the string with `nok_string_free`.
enum NokStatus nok_constants_json(const struct NokIdeal *ideal, char **out);

// Minimal generators of the `k`-th symbolic power as JSON.
//
// # Safety
// `ideal` must be a live handle and `out` writable. Free the string with `nok_string_free`.
enum NokStatus nok_symbolic_power_json(const struct NokIdeal *ideal, uint32_t k, char **out);

// Hilbert basis of the Simis cone as JSON. A `degree_bound` of zero uses the
// bound beyond which no basis element exists.
//
// # Safety
// `ideal` must be a live handle and `out` writable. Free the string with `nok_string_free`.
enum NokStatus nok_hilbert_json(const struct NokIdeal *ideal, uint32_t degree_bound, char **out);

// # Safety
// `s` must come from this library and not be freed twice. Null is ignored.
void nok_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NOK_H */
