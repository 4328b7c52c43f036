#ifndef EXANGULATE_H
#define EXANGULATE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Seed used by the decomposition search unless another one is given.
 */
#define EXG_DEFAULT_SEED 1592598564

typedef enum ExgStatus {
  EXG_STATUS_OK = 0,
  EXG_STATUS_NULL_POINTER = 1,
  EXG_STATUS_INVALID_UTF8 = 2,
  /**
   * The session text is not well-formed.
   */
  EXG_STATUS_SYNTAX = 3,
  /**
   * The session text is well-formed but inconsistent.
   */
  EXG_STATUS_SEMANTIC = 4,
  /**
   * A computation could not be completed within its bounds.
   */
  EXG_STATUS_COMPUTATION = 5,
  EXG_STATUS_INTERNAL = 6,
  EXG_STATUS_PANIC = 7,
} ExgStatus;

/**
 * A parsed and built category. Opaque to C.
 */
typedef struct ExgSession ExgSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a session file's text and builds the category.
 *
 * `prime` and `multiplicity_bound` override the file when nonzero.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ExgStatus exg_session_new(const char *text,
                               uint32_t prime,
                               size_t multiplicity_bound,
                               uint64_t seed,
                               struct ExgSession **out);

/**
 * # Safety
 * `s` must be null or a session from [`exg_session_new`] not yet freed.
 */
void exg_session_free(struct ExgSession *s);

/**
 * Number of indecomposable generators.
 *
 * # Safety
 * `s` must be a live session and `out` a valid pointer.
 */
enum ExgStatus exg_generator_count(const struct ExgSession *s, size_t *out);

/**
 * Runs the core axiom checks; writes the JSON report and the exit code.
 *
 * # Safety
 * `s` must be a live session; `json` and `exit_code` valid pointers. The
 * report is freed with [`exg_string_free`].
 */
enum ExgStatus exg_check_json(const struct ExgSession *s, char **json, int32_t *exit_code);

/**
 * Runs the full localization; writes the JSON report and the exit code.
 *
 * # Safety
 * As for [`exg_check_json`].
 */
enum ExgStatus exg_localize_json(const struct ExgSession *s, char **json, int32_t *exit_code);

/**
 * `dim Hom(x, y)` for objects written `A + B + …` over generator labels.
 *
 * # Safety
 * `s` must be a live session, `x` and `y` NUL-terminated strings and `out`
 * a valid pointer.
 */
enum ExgStatus exg_hom_dim(const struct ExgSession *s, const char *x, const char *y, size_t *out);

/**
 * `dim E(c, a)`.
 *
 * # Safety
 * As for [`exg_hom_dim`].
 */
enum ExgStatus exg_ext_dim(const struct ExgSession *s, const char *c, const char *a, size_t *out);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `p` must be null or a string from this library not yet freed.
 */
void exg_string_free(char *p);

/**
 * Message of the last failure on this thread, empty after a success. The
 * pointer stays valid until the next call into the library on this thread.
 */
const char *exg_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXANGULATE_H */
