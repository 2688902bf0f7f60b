#ifndef WREATH_FOULKES_H
#define WREATH_FOULKES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WfStatus {
  WF_STATUS_OK = 0,
  WF_STATUS_NULL_POINTER = 1,
  WF_STATUS_INVALID_ARGUMENT = 2,
  WF_STATUS_PARSE = 3,
  WF_STATUS_BUDGET_EXCEEDED = 4,
  // A computed value disagreed with its combinatorial count.
  WF_STATUS_MISMATCH = 5,
  WF_STATUS_BUFFER_TOO_SMALL = 6,
  WF_STATUS_OVERFLOW = 7,
  WF_STATUS_PANIC = 8,
} WfStatus;

// An exact class function, values stored per conjugacy class.
typedef struct WfCharacter WfCharacter;

// A wreath product W(r,n).
typedef struct WfGroup WfGroup;

typedef struct WfReport WfReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread, or null. Owned by the
// library and valid until the next failing call.
const char *wf_last_error(void);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void wf_string_free(char *s);

// # Safety
// `out` must be valid for writes.
enum WfStatus wf_group_new(uint32_t r, size_t n, struct WfGroup **out);

// # Safety
// `group` must be null or a handle from [`wf_group_new`] not yet freed.
void wf_group_free(struct WfGroup *group);

// r^n·n!, or [`WfStatus::Overflow`] past 64 bits.
//
// # Safety
// `group` must be a live handle and `out` valid for writes.
enum WfStatus wf_group_order(const struct WfGroup *group, uint64_t *out);

// Writes E(r,n,0..n) into `buf`. `written` receives n+1 even when the
// buffer is too small, so callers can size a retry.
//
// # Safety
// `group` must be a live handle, `buf` valid for `len` writes, `written` valid for writes.
enum WfStatus wf_eulerian(const struct WfGroup *group, uint64_t *buf, size_t len, size_t *written);

// The Foulkes character φ_k of the group.
//
// # Safety
// `group` must be a live handle and `out` valid for writes.
enum WfStatus wf_foulkes_character(const struct WfGroup *group, size_t k, struct WfCharacter **out);

// # Safety
// `ch` must be null or a handle from this library not yet freed.
void wf_character_free(struct WfCharacter *ch);

// JSON `{r, n, classes, values}`; each value is a list of rational
// coefficient strings in powers of a primitive r-th root of unity.
//
// # Safety
// `ch` must be a live handle and `out` valid for writes.
enum WfStatus wf_character_json(const struct WfCharacter *ch, char **out);

// Multiplicity of the irreducible labelled `label` (e.g. "[[1],[1]]") in φ_k.
//
// # Safety
// `group` must be a live handle, `label` a nul-terminated string, `out` valid for writes.
enum WfStatus wf_foulkes_multiplicity(const struct WfGroup *group,
                                      const char *label,
                                      size_t k,
                                      uint64_t *out);

// Colored RSK of a word such as "2^1 1^0"; JSON `{insertion, recording}`.
//
// # Safety
// `word` must be a nul-terminated string and `out` valid for writes.
enum WfStatus wf_rsk_json(uint32_t r, const char *word, char **out);

// Runs identity suites (comma-separated, or "all"). With `whole_grid` set
// the built-in grid is used and `r`, `n` are ignored.
//
// # Safety
// `suites` must be a nul-terminated string and `out` valid for writes.
enum WfStatus wf_verify(uint32_t r,
                        size_t n,
                        bool whole_grid,
                        const char *suites,
                        uint64_t seed,
                        uint64_t basis_budget,
                        struct WfReport **out);

// # Safety
// `report` must be null or a handle from [`wf_verify`] not yet freed.
void wf_report_free(struct WfReport *report);

// Number of FAIL entries.
//
// # Safety
// `report` must be a live handle and `out` valid for writes.
enum WfStatus wf_report_failures(const struct WfReport *report, size_t *out);

// The report in the same JSON schema the command line prints.
//
// # Safety
// `report` must be a live handle and `out` valid for writes.
enum WfStatus wf_report_json(const struct WfReport *report, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WREATH_FOULKES_H */
