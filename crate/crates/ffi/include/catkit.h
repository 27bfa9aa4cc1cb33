#ifndef CATKIT_H
#define CATKIT_H

/* Generated by cbindgen. Do not edit. */

#include <stdbool.h>
#include <stdint.h>
#include <stddef.h>

typedef enum CatkitStatus {
  CATKIT_STATUS_OK = 0,
  CATKIT_STATUS_NULL_ARGUMENT = 1,
  CATKIT_STATUS_INVALID_UTF8 = 2,
  CATKIT_STATUS_MALFORMED_INPUT = 3,
  CATKIT_STATUS_INVALID_INPUT = 4,
  CATKIT_STATUS_UNKNOWN_NAME = 5,
  CATKIT_STATUS_NOT_COMPOSABLE = 6,
  CATKIT_STATUS_SIZE_LIMIT_EXCEEDED = 7,
  CATKIT_STATUS_NOT_A_MONAD = 8,
  CATKIT_STATUS_UNSUPPORTED = 9,
  CATKIT_STATUS_OVERFLOW = 10,
  CATKIT_STATUS_INTERNAL = 11,
} CatkitStatus;

/**
 * Result of a bounded word-problem query.
 */
typedef enum CatkitVerdict {
  CATKIT_VERDICT_EQUAL = 0,
  CATKIT_VERDICT_DISTINCT = 1,
  CATKIT_VERDICT_UNKNOWN = 2,
} CatkitVerdict;

/**
 * A validated finite category.
 */
typedef struct CatkitCategory CatkitCategory;

/**
 * A finite monad.
 */
typedef struct CatkitMonad CatkitMonad;

/**
 * A presented category or groupoid with its rewriting bound.
 */
typedef struct CatkitPresentation CatkitPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer is
 * valid until the next catkit call on the same thread.
 */
const char *catkit_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void catkit_string_free(char *s);

/**
 * Parses and validates a `fincat/v1` document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum CatkitStatus catkit_category_from_json(const char *json, struct CatkitCategory **out);

/**
 * # Safety
 * `c` must be NULL or a handle from [`catkit_category_from_json`].
 */
void catkit_category_free(struct CatkitCategory *c);

/**
 * # Safety
 * `c` must be a live handle.
 */
uintptr_t catkit_category_num_objects(const struct CatkitCategory *c);

/**
 * # Safety
 * `c` must be a live handle.
 */
uintptr_t catkit_category_num_morphisms(const struct CatkitCategory *c);

/**
 * Id of `g ∘ f`.
 *
 * # Safety
 * `c` must be a live handle, `g` and `f` NUL-terminated strings and `out`
 * writable.
 */
enum CatkitStatus catkit_category_compose(const struct CatkitCategory *c,
                                          const char *g,
                                          const char *f,
                                          char **out);

/**
 * Canonical `fincat/v1` JSON of the category.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum CatkitStatus catkit_category_to_json(const struct CatkitCategory *c, char **out);

/**
 * Parses a `computad/v1` document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum CatkitStatus catkit_presentation_from_json(const char *json, struct CatkitPresentation **out);

/**
 * # Safety
 * `p` must be NULL or a handle from [`catkit_presentation_from_json`].
 */
void catkit_presentation_free(struct CatkitPresentation *p);

/**
 * Bounded word problem between two words in the text syntax of the CLI.
 *
 * # Safety
 * `p` must be a live handle, `lhs` and `rhs` NUL-terminated strings and
 * `out` writable.
 */
enum CatkitStatus catkit_presentation_word_eq(const struct CatkitPresentation *p,
                                              const char *lhs,
                                              const char *rhs,
                                              enum CatkitVerdict *out);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum CatkitStatus catkit_presentation_deficiency(const struct CatkitPresentation *p, int64_t *out);

/**
 * Parses a `monad/v1` document and checks the monad laws.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum CatkitStatus catkit_monad_from_json(const char *json, struct CatkitMonad **out);

/**
 * # Safety
 * `m` must be NULL or a handle from [`catkit_monad_from_json`].
 */
void catkit_monad_free(struct CatkitMonad *m);

/**
 * Whether the algebras of `m` are isomorphic to the colax descent category
 * of its diagram.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum CatkitStatus catkit_monad_em_check(const struct CatkitMonad *m, bool *out);

/**
 * Runs one CLI command (`argv` excludes the program name) and returns its
 * exit code; stdout goes to `out`.
 *
 * # Safety
 * `argv` must point to `argc` NUL-terminated strings and `out` and `exit`
 * must be writable.
 */
enum CatkitStatus catkit_run_json(int argc, const char *const *argv, char **out, int *exit);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CATKIT_H */
