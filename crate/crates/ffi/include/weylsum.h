#ifndef WEYLSUM_H
#define WEYLSUM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WsStatus {
  WS_STATUS_OK = 0,
  WS_STATUS_NULL_POINTER = 1,
  WS_STATUS_INVALID_ARGUMENT = 2,
  WS_STATUS_NOT_DOMINANT = 3,
  WS_STATUS_CAP_EXCEEDED = 4,
  WS_STATUS_ZERO_DENOMINATOR = 5,
  WS_STATUS_INVALID_MODULUS = 6,
  WS_STATUS_TABLE_ERROR = 7,
  WS_STATUS_IO = 8,
  WS_STATUS_PANIC = 9,
} WsStatus;

/**
 * Opaque root system handle.
 */
typedef struct WsAlgebra WsAlgebra;

/**
 * Opaque list of signed permutation weights.
 */
typedef struct WsPermWeights WsPermWeights;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null after a success.
 * The pointer stays valid until the next call into this library.
 */
const char *ws_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ws_string_free(char *s);

/**
 * Builds the root system named `name` ("E7", "E8", "A1" … "A8").
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum WsStatus ws_algebra_new(const char *name, struct WsAlgebra **out);

/**
 * # Safety
 * `alg` must come from [`ws_algebra_new`] and not have been freed.
 */
void ws_algebra_free(struct WsAlgebra *alg);

/**
 * Rank of the algebra, 0 for a null handle.
 *
 * # Safety
 * `alg` must be null or a live handle.
 */
size_t ws_algebra_rank(const struct WsAlgebra *alg);

/**
 * Size of the Weyl orbit of a dominant weight, as a decimal string.
 *
 * # Safety
 * `labels` must point to `len` values; `out` must be writable.
 */
enum WsStatus ws_orbit_size(const struct WsAlgebra *alg,
                            const int64_t *labels,
                            size_t len,
                            char **out);

/**
 * Weyl dimension of the irreducible module with the given highest weight,
 * as a decimal string.
 *
 * # Safety
 * As for [`ws_orbit_size`].
 */
enum WsStatus ws_dimension(const struct WsAlgebra *alg,
                           const int64_t *labels,
                           size_t len,
                           char **out);

/**
 * Permutation weights of a dominant weight for `pair` ("E7:A7", "E8:A8",
 * "A<n>:A<n-1>").
 *
 * # Safety
 * `pair` must be a nul-terminated string, `labels` must point to `len`
 * values and `out` must be writable.
 */
enum WsStatus ws_phi(const char *pair,
                     const int64_t *labels,
                     size_t len,
                     struct WsPermWeights **out);

/**
 * # Safety
 * `pw` must be null or a live handle.
 */
size_t ws_permweights_len(const struct WsPermWeights *pw);

/**
 * Copies entry `index` into `labels_out` (capacity `cap`) and its sign (+1 or
 * −1) into `sign_out`.
 *
 * # Safety
 * `pw` must be a live handle; `labels_out` must hold `cap` values.
 */
enum WsStatus ws_permweights_get(const struct WsPermWeights *pw,
                                 size_t index,
                                 int64_t *labels_out,
                                 size_t cap,
                                 int32_t *sign_out);

/**
 * # Safety
 * `pw` must come from [`ws_phi`] and not have been freed.
 */
void ws_permweights_free(struct WsPermWeights *pw);

/**
 * Alternating Weyl sum of a strictly dominant weight mod `prime`, evaluated
 * through permutation weights. `u` holds the free subalgebra variables
 * (alphabet size − 1 of them); the last one is their inverse product.
 *
 * # Safety
 * `pair` must be a nul-terminated string, `labels` and `u` must point to
 * `len` and `u_len` values, `out` must be writable.
 */
enum WsStatus ws_weyl_sum_mod_p(const char *pair,
                                const int64_t *labels,
                                size_t len,
                                const uint64_t *u,
                                size_t u_len,
                                uint64_t prime,
                                uint64_t *out);

/**
 * Character of the irreducible module with highest weight `labels` mod
 * `prime`, at the same kind of point as [`ws_weyl_sum_mod_p`].
 *
 * # Safety
 * As for [`ws_weyl_sum_mod_p`].
 */
enum WsStatus ws_character_mod_p(const char *pair,
                                 const int64_t *labels,
                                 size_t len,
                                 const uint64_t *u,
                                 size_t u_len,
                                 uint64_t prime,
                                 uint64_t *out);

/**
 * q-dimension polynomial as comma-separated coefficients of q^0, q^1, ….
 *
 * # Safety
 * As for [`ws_phi`], with `out` receiving a string.
 */
enum WsStatus ws_q_dimension(const char *pair,
                             const int64_t *labels,
                             size_t len,
                             uint64_t prime,
                             char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEYLSUM_H */
