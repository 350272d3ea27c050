#ifndef GAMMA_GROUPS_H
#define GAMMA_GROUPS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GgStatus {
  GG_STATUS_OK = 0,
  GG_STATUS_NULL_POINTER = 1,
  GG_STATUS_INVALID_UTF8 = 2,
  GG_STATUS_UNKNOWN_NAME = 3,
  GG_STATUS_PARSE_ERROR = 4,
  GG_STATUS_CAP_EXCEEDED = 5,
  GG_STATUS_UNKNOWN_CLAIM = 6,
  GG_STATUS_INTERNAL = 7,
} GgStatus;

/**
 * Opaque group handle.
 */
typedef struct GgGroup GgGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Look up a catalog group by name or alias.
 *
 * # Safety
 * `name` must be a valid nul-terminated string and `out` valid for writes.
 */
enum GgStatus gg_catalog_group(const char *name, struct GgGroup **out);

/**
 * Close the generators of a JSON generator file (`{"name", "dimension",
 * "generators": [...]}`) into a group of at most `cap` elements; `cap` 0
 * selects the default cap.
 *
 * # Safety
 * `json` must be a valid nul-terminated string and `out` valid for writes.
 */
enum GgStatus gg_group_from_json(const char *json, uintptr_t cap, struct GgGroup **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `group` must be null or a handle from this library not yet freed.
 */
void gg_group_free(struct GgGroup *group);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `group` must be null or a live handle.
 */
uintptr_t gg_group_order(const struct GgGroup *group);

/**
 * Matrix dimension, or 0 for a null handle.
 *
 * # Safety
 * `group` must be null or a live handle.
 */
uintptr_t gg_group_dimension(const struct GgGroup *group);

/**
 * Number of conjugacy classes, or 0 for a null handle.
 *
 * # Safety
 * `group` must be null or a live handle.
 */
uintptr_t gg_group_class_count(const struct GgGroup *group);

/**
 * Order of the center, or 0 for a null handle.
 *
 * # Safety
 * `group` must be null or a live handle.
 */
uintptr_t gg_group_center_order(const struct GgGroup *group);

/**
 * Write 1 to `out` when the groups are isomorphic (with a verified
 * certificate), 0 otherwise.
 *
 * # Safety
 * `a` and `b` must be live handles, `out` valid for writes.
 */
enum GgStatus gg_group_is_isomorphic(const struct GgGroup *a,
                                     const struct GgGroup *b,
                                     int32_t *out);

/**
 * Full structural profile of the group as a JSON object.
 *
 * # Safety
 * `group` must be a live handle, `out` valid for writes; free the result
 * with `gg_string_free`.
 */
enum GgStatus gg_analyze_json(const struct GgGroup *group, char **out);

/**
 * Run the claims whose ids match `filter` (null runs all). Writes the
 * results as a JSON array to `out` and the number of failing claims to
 * `failures`.
 *
 * # Safety
 * `filter` must be null or a valid nul-terminated string; `out` and
 * `failures` valid for writes; free the result with `gg_string_free`.
 */
enum GgStatus gg_verify_claims(const char *filter, char **out, uintptr_t *failures);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void gg_string_free(char *s);

/**
 * Message for the last failure on this thread, or null if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *gg_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *gg_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAMMA_GROUPS_H */
