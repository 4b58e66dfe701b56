#ifndef MCKAY_H
#define MCKAY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum mckay_status {
  MCKAY_STATUS_OK = 0,
  MCKAY_STATUS_NULL_POINTER = 1,
  MCKAY_STATUS_INVALID_ARGUMENT = 2,
  MCKAY_STATUS_UNKNOWN_SPEC = 3,
  MCKAY_STATUS_OUT_OF_SCOPE = 4,
  MCKAY_STATUS_BUFFER_TOO_SMALL = 5,
  MCKAY_STATUS_INTERNAL = 6,
  MCKAY_STATUS_PANIC = 7,
} mckay_status;

/**
 * Opaque handle to a group with its character table and McKay quiver.
 */
typedef struct mckay_group mckay_group;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL. Valid until the next failing call.
 */
const char *mckay_last_error(void);

/**
 * Build a group from a spec string such as `"binary-icosahedral"` or `"cyclic:5"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum mckay_status mckay_group_new(const char *spec, struct mckay_group **out);

/**
 * # Safety
 * `g` must come from [`mckay_group_new`] and not be freed twice. NULL is ignored.
 */
void mckay_group_free(struct mckay_group *g);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. NULL is ignored.
 */
void mckay_string_free(char *s);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum mckay_status mckay_group_order(const struct mckay_group *g, size_t *out);

/**
 * Number of irreducible representations, i.e. quiver vertices.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum mckay_status mckay_quiver_size(const struct mckay_group *g, size_t *out);

/**
 * Row-major adjacency matrix; `buf` must hold `size * size` values.
 *
 * # Safety
 * `g` must be a live handle and `buf` valid for `len` writes.
 */
enum mckay_status mckay_quiver_adjacency(const struct mckay_group *g, int64_t *buf, size_t len);

/**
 * Irrep degrees, which form the imaginary root `δ`.
 *
 * # Safety
 * `g` must be a live handle and `buf` valid for `len` writes.
 */
enum mckay_status mckay_quiver_delta(const struct mckay_group *g, int64_t *buf, size_t len);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum mckay_status mckay_dim_g(const struct mckay_group *g, size_t *out);

/**
 * Affine type name, e.g. `"E~8"`. Free with [`mckay_string_free`].
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum mckay_status mckay_ade_type(const struct mckay_group *g, char **out);

/**
 * Character table as JSON. Free with [`mckay_string_free`].
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum mckay_status mckay_chartab_json(const struct mckay_group *g, char **out);

/**
 * Cartan data as JSON. Free with [`mckay_string_free`].
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum mckay_status mckay_quiver_json(const struct mckay_group *g, char **out);

/**
 * Weight multiplicities of `L(w)` up to height `depth`, as JSON.
 *
 * # Safety
 * `g` must be a live handle, `w` valid for `w_len` reads, `out` a valid pointer.
 */
enum mckay_status mckay_multiplicities_json(const struct mckay_group *g,
                                            const int64_t *w,
                                            size_t w_len,
                                            size_t depth,
                                            char **out);

/**
 * Stratum labels for `n` points with framing `w`, as JSON.
 *
 * # Safety
 * `g` must be a live handle, `w` valid for `w_len` reads, `out` a valid pointer.
 */
enum mckay_status mckay_strata_json(const struct mckay_group *g,
                                    uint64_t n,
                                    const int64_t *w,
                                    size_t w_len,
                                    char **out);

/**
 * Fiber decomposition of `M(v, w)` over the stratum `(v0, lam)`, as JSON.
 * `v`, `w` and `v0` all have `len` entries.
 *
 * # Safety
 * `g` must be a live handle, the arrays valid for the stated lengths, `out` a valid pointer.
 */
enum mckay_status mckay_fiber_json(const struct mckay_group *g,
                                   const int64_t *v,
                                   const int64_t *w,
                                   const int64_t *v0,
                                   size_t len,
                                   const uint64_t *lam,
                                   size_t lam_len,
                                   char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MCKAY_H */
