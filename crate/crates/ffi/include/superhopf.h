#ifndef SUPERHOPF_H
#define SUPERHOPF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  SH_STATUS_OK = 0,
  SH_STATUS_NULL_POINTER = 1,
  SH_STATUS_INVALID_UTF8 = 2,
  SH_STATUS_UNKNOWN_ID = 3,
  SH_STATUS_PARSE = 4,
  SH_STATUS_VALIDATION = 5,
  SH_STATUS_UNSUPPORTED = 6,
  SH_STATUS_SHAPE = 7,
  SH_STATUS_INTERNAL = 8,
  SH_STATUS_PANIC = 9,
} ShStatus;

typedef enum {
  SH_ANTIPODE_FOUND = 0,
  SH_ANTIPODE_NOT_FOUND = 1,
  SH_ANTIPODE_NON_UNIQUE = 2,
} ShAntipode;

typedef enum {
  SH_ISO_ISO = 0,
  SH_ISO_NON_ISO = 1,
  SH_ISO_UNDETERMINED = 2,
} ShIso;

/**
 * Opaque record handle.
 */
typedef struct ShRecord ShRecord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. Valid until the next failing call.
 */
const char *sh_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void sh_string_free(char *s);

/**
 * # Safety
 * `r` must come from this library and not have been freed.
 */
void sh_record_free(ShRecord *r);

/**
 * Number of records in the bundled catalog.
 */
size_t sh_catalog_len(void);

/**
 * Id of catalog record `index`, as a string owned by the caller.
 *
 * # Safety
 * `out` must be writable.
 */
ShStatus sh_catalog_id(size_t index, char **out);

/**
 * Resolves a catalog id, alias, named family, or an expression such as `dual(H2)`.
 *
 * # Safety
 * `expr` must be a nul-terminated string; `out` must be writable.
 */
ShStatus sh_record_resolve(const char *expr, ShRecord **out);

/**
 * Parses a record document.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
ShStatus sh_record_from_json(const char *json, ShRecord **out);

/**
 * Serializes a record as a document.
 *
 * # Safety
 * `r` must be a live handle; `out` must be writable.
 */
ShStatus sh_record_to_json(const ShRecord *r, char **out);

/**
 * Even and odd dimensions of the underlying superspace.
 *
 * # Safety
 * `r` must be a live handle; `n0` and `n1` must be writable.
 */
ShStatus sh_record_dims(const ShRecord *r, size_t *n0, size_t *n1);

/**
 * Whether every superbialgebra axiom holds.
 *
 * # Safety
 * `r` must be a live handle; `holds` must be writable.
 */
ShStatus sh_verify(const ShRecord *r, bool *holds);

/**
 * Solves for the antipode. On `Found`, `antipode_json` (if non-NULL) receives the images of the basis.
 *
 * # Safety
 * `r` must be a live handle; `status` must be writable; `antipode_json` may be NULL.
 */
ShStatus sh_antipode(const ShRecord *r,
                     ShAntipode *status,
                     char **antipode_json);

/**
 * The fingerprint as JSON.
 *
 * # Safety
 * `r` must be a live handle; `out` must be writable.
 */
ShStatus sh_fingerprint_json(const ShRecord *r, char **out);

/**
 * Isomorphism search. `detail_json` (if non-NULL) receives the map or the separating invariant.
 *
 * # Safety
 * `a` and `b` must be live handles; `result` must be writable; `detail_json` may be NULL.
 */
ShStatus sh_find_isomorphism(const ShRecord *a,
                             const ShRecord *b,
                             ShIso *result,
                             char **detail_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPERHOPF_H */
