#ifndef MISSING_WHY_H
#define MISSING_WHY_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum mw_status {
  MW_STATUS_OK = 0,
  MW_STATUS_NULL_ARGUMENT = 1,
  MW_STATUS_INVALID_UTF8 = 2,
  MW_STATUS_SYNTAX_ERROR = 3,
  MW_STATUS_INVALID_ARGUMENT = 4,
  MW_STATUS_UNSUPPORTED = 5,
  MW_STATUS_ALREADY_ENTAILED = 6,
  MW_STATUS_INCONSISTENT_INPUT = 7,
  MW_STATUS_INCONSISTENT_WITH_DISJOINTNESS = 8,
  MW_STATUS_NOTHING_TO_APPLY = 9,
  MW_STATUS_INDEX_OUT_OF_RANGE = 10,
  MW_STATUS_CANCELLED = 11,
  MW_STATUS_BUDGET_EXCEEDED = 12,
  MW_STATUS_INTERNAL = 13,
} mw_status;

typedef enum mw_format {
  MW_FORMAT_JSON = 0,
  MW_FORMAT_DOT = 1,
} mw_format;

/**
 * Opaque session handle.
 */
typedef struct mw_session mw_session;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `ontology` (functional-style syntax) into a new session.
 *
 * # Safety
 * `ontology` must be a NUL-terminated string and `out` a valid pointer.
 */
enum mw_status mw_session_new(const char *ontology, struct mw_session **out);

/**
 * # Safety
 * `session` must come from [`mw_session_new`] and not be used afterwards.
 */
void mw_session_free(struct mw_session *session);

/**
 * Sets the missing entailment from a query document
 * (`{"missing": [...]}`) and an optional vocabulary document
 * (`{"permitted": {...}}`); a null vocabulary permits every name.
 *
 * # Safety
 * Pointers must be valid NUL-terminated strings; `vocabulary` may be null.
 */
enum mw_status mw_session_set_query(const struct mw_session *session,
                                    const char *query_json,
                                    const char *vocabulary_json);

/**
 * Writes 1 to `supported` if `method` can run on the current query, else 0
 * with the reason available from [`mw_last_error_message`].
 *
 * # Safety
 * Pointers must be valid.
 */
enum mw_status mw_session_check_support(const struct mw_session *session,
                                        const char *method,
                                        int32_t *supported);

/**
 * Runs `method` and writes the result as JSON; graphs carry at most `k`
 * labels per element.
 *
 * # Safety
 * Pointers must be valid; the string written to `out` must be released
 * with [`mw_string_free`].
 */
enum mw_status mw_session_explain(const struct mw_session *session,
                                  const char *method,
                                  size_t page_size,
                                  size_t k,
                                  char **out);

/**
 * Stages a disjointness between `count` class names.
 *
 * # Safety
 * `names` must point to `count` NUL-terminated strings.
 */
enum mw_status mw_session_add_disjointness(const struct mw_session *session,
                                           const char *const *names,
                                           size_t count);

/**
 * # Safety
 * `session` must be valid.
 */
enum mw_status mw_session_remove_disjointness(const struct mw_session *session, size_t index);

/**
 * Reruns a counterexample method with the staged disjointnesses.
 *
 * # Safety
 * As for [`mw_session_explain`].
 */
enum mw_status mw_session_recompute(const struct mw_session *session,
                                    const char *method,
                                    size_t k,
                                    char **out);

/**
 * Commits the staged disjointnesses when `hypothesis` is negative,
 * otherwise the hypothesis with that index from the latest result.
 *
 * # Safety
 * `session` must be valid.
 */
enum mw_status mw_session_apply(const struct mw_session *session, int64_t hypothesis);

/**
 * # Safety
 * `session` must be valid.
 */
enum mw_status mw_session_revert(const struct mw_session *session);

/**
 * Writes the current ontology in functional-style syntax.
 *
 * # Safety
 * As for [`mw_session_explain`].
 */
enum mw_status mw_session_ontology(const struct mw_session *session, char **out);

/**
 * Exports the latest counterexample as JSON or DOT.
 *
 * # Safety
 * As for [`mw_session_explain`].
 */
enum mw_status mw_session_graph(const struct mw_session *session,
                                size_t k,
                                enum mw_format format,
                                char **out);

/**
 * Interrupts a running explain or recompute call on `session`; safe to call
 * from any thread.
 *
 * # Safety
 * `session` must be valid.
 */
enum mw_status mw_session_cancel(const struct mw_session *session);

/**
 * Message of the last failure on this thread, or null.
 */
const char *mw_last_error_message(void);

/**
 * Machine-readable code of the last failure on this thread, or null.
 */
const char *mw_last_error_code(void);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void mw_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MISSING_WHY_H */
