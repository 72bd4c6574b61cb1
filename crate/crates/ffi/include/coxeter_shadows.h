#ifndef COXETER_SHADOWS_H
#define COXETER_SHADOWS_H

/* Generated by cbindgen from coxeter-shadows-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible entry point.
typedef enum {
  COX_STATUS_OK = 0,
  COX_STATUS_NULL_ARGUMENT = 1,
  COX_STATUS_INVALID_SYSTEM = 2,
  COX_STATUS_INVALID_ARGUMENT = 3,
  COX_STATUS_CAP_EXCEEDED = 4,
  COX_STATUS_CHECK_FAILED = 5,
  COX_STATUS_INCONCLUSIVE = 6,
  COX_STATUS_PANICKED = 7,
} CoxStatus;

// Opaque handle to a Coxeter group.
typedef struct CoxGroup CoxGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a system description (preset name like `Gtilde2`, or text of the
// form `rank N; m i j = v`) and writes a fresh handle through `out`.
//
// # Safety
// `spec` must be a valid NUL-terminated string and `out` a valid pointer.
// The returned handle must be released with `cox_group_free`.
CoxStatus cox_group_new(const char *spec, CoxGroup **out);

// Releases a handle returned by `cox_group_new`.  A null handle is a no-op.
//
// # Safety
// `group` must be null or a pointer previously returned by `cox_group_new`
// that has not been freed yet.
void cox_group_free(CoxGroup *group);

// The rank of the system; 0 for a null handle.
//
// # Safety
// `group` must be null or a live handle.
uint32_t cox_group_rank(const CoxGroup *group);

// The canonical text of the system, suitable as a cache key.
//
// # Safety
// `group` must be a live handle and `out` a valid pointer.
CoxStatus cox_group_describe(const CoxGroup *group, char **out);

// Counts the small roots, writing the count through `out`.  `max_roots`
// bounds the enumeration; exceeding it yields `COX_STATUS_CAP_EXCEEDED`.
//
// # Safety
// `group` must be a live handle and `out` a valid pointer.
CoxStatus cox_small_root_count(const CoxGroup *group, uintptr_t max_roots, uintptr_t *out);

// Counts the Shi parts (= smallest elements), writing through `out`.
// `max_states` caps both the root enumeration and the automaton.
//
// # Safety
// `group` must be a live handle and `out` a valid pointer.
CoxStatus cox_shi_part_count(const CoxGroup *group, uintptr_t max_states, uintptr_t *out);

// Counts the gates (= states of the minimal reduced-word automaton, = cone
// types), writing through `out`.
//
// # Safety
// `group` must be a live handle and `out` a valid pointer.
CoxStatus cox_gate_count(const CoxGroup *group, uintptr_t max_states, uintptr_t *out);

// Reduced-word counts by length as a JSON array `[1, n1, n2, ...]` up to
// `max_len`, written through `out` as an owned string.
//
// # Safety
// `group` must be a live handle and `out` a valid pointer.
CoxStatus cox_growth_json(const CoxGroup *group,
                          uint32_t max_len,
                          uintptr_t max_states,
                          char **out);

// Runs a verification suite (`automata`, `shi`, `shadow`, `cone`,
// `bipodality` or `all`) at the given ball radius and writes the JSON
// report through `out`.  The status reflects the worst check outcome:
// `COX_STATUS_CHECK_FAILED` for a failure, `COX_STATUS_INCONCLUSIVE` when
// nothing failed but some check could not be decided at this radius.
//
// # Safety
// `group` must be a live handle, `suite` a valid NUL-terminated string and
// `out` a valid pointer.
CoxStatus cox_verify_json(const CoxGroup *group, const char *suite, uint32_t radius, char **out);

// Releases a string returned through any `out` parameter.  Null is a no-op.
//
// # Safety
// `s` must be null or a string previously returned by this library that has
// not been freed yet.
void cox_string_free(char *s);

// A static description of a status code; never needs freeing.
const char *cox_status_message(CoxStatus status);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* COXETER_SHADOWS_H */
