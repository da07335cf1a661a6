#ifndef SATGAME_H
#define SATGAME_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  SG_KIND_SATURATION = 0,
  SG_KIND_TAU = 1,
} SgKind;

typedef enum {
  SG_MODE_FULL = 0,
  SG_MODE_CERTIFY = 1,
} SgMode;

typedef enum {
  SG_ROLE_MINIMIZER = 0,
  SG_ROLE_MAXIMIZER = 1,
} SgRole;

typedef enum {
  SG_STATUS_OK = 0,
  SG_STATUS_NULL_POINTER = 1,
  SG_STATUS_INVALID_PARAMETER = 2,
  SG_STATUS_INVALID_STATE = 3,
  SG_STATUS_UNIVERSE_TOO_SMALL = 4,
  SG_STATUS_RULE_VIOLATION = 5,
  SG_STATUS_FORFEIT = 6,
  SG_STATUS_RESOURCE_LIMIT = 7,
  SG_STATUS_INTERNAL = 8,
  SG_STATUS_INVALID_UTF8 = 9,
  SG_STATUS_BUFFER_TOO_SMALL = 10,
  SG_STATUS_PANIC = 11,
} SgStatus;

/**
 * An intersecting family of k-sets.
 */
typedef struct SgFamily SgFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library on the same thread.
 */
const char *sg_last_error_message(void);

/**
 * Creates an empty family of k-subsets of `[n]`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
SgStatus sg_family_new(uint32_t n, uint32_t k, SgFamily **out);

/**
 * Releases a family. Null is ignored.
 *
 * # Safety
 * `f` must come from [`sg_family_new`] and must not be used afterwards.
 */
void sg_family_free(SgFamily *f);

/**
 * Adds a k-set given as `len` elements. Fails without changing the family
 * if the set is malformed, already present, or disjoint from a member.
 *
 * # Safety
 * `f` must be a live handle and `elems` must point to `len` readable values.
 */
SgStatus sg_family_push(SgFamily *f, const uint32_t *elems, size_t len);

/**
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
SgStatus sg_family_len(const SgFamily *f, size_t *out);

/**
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
SgStatus sg_family_is_intersecting(const SgFamily *f, bool *out);

/**
 * Whether no further k-set can be added.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
SgStatus sg_family_is_maximal(const SgFamily *f, bool *out);

/**
 * Writes the covering number to `out_tau` and, if `cover` is not null, a
 * smallest cover into `cover[0..tau]`. Fails with `BufferTooSmall` (after
 * writing `out_tau`) when `cover_cap < tau`.
 *
 * # Safety
 * `f` must be a live handle, `out_tau` writable, and `cover` either null or
 * writable for `cover_cap` values.
 */
SgStatus sg_family_covering_number(const SgFamily *f,
                                   uint32_t *out_tau,
                                   uint32_t *cover,
                                   size_t cover_cap);

/**
 * Exact value of the game on k-subsets of `[n]` under optimal play.
 *
 * # Safety
 * `out` must be writable.
 */
SgStatus sg_solve(uint32_t n, uint32_t k, SgKind kind, SgRole first, uint64_t *out);

/**
 * Exact value of the antichain game on subsets of `[n]`.
 *
 * # Safety
 * `out` must be writable.
 */
SgStatus sg_solve_sperner(uint32_t n, SgRole first, uint64_t *out);

/**
 * Bound on the minimizer's cover size after round `i` for set size `k`.
 *
 * # Safety
 * `out` must be writable.
 */
SgStatus sg_round_cover_bound(uint32_t i, uint32_t k, uint32_t *out);

/**
 * Plays one game between two named strategies and returns the transcript
 * as a JSON string, to be released with [`sg_string_free`].
 *
 * # Safety
 * `strategy_a` and `strategy_b` must be nul-terminated strings and
 * `out_json` writable.
 */
SgStatus sg_play_json(uint32_t n,
                      uint32_t k,
                      SgKind kind,
                      SgRole first,
                      const char *strategy_a,
                      const char *strategy_b,
                      SgMode mode,
                      uint64_t seed,
                      char **out_json);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void sg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SATGAME_H */
