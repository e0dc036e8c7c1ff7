/* C interface to the sdhall engine. */

#ifndef SDHALL_H
#define SDHALL_H

/* Generated by cbindgen from the sdhall-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code returned by every fallible interface function.
typedef enum SdhallStatus {
  // The call succeeded.
  SDHALL_STATUS_OK = 0,
  // A required pointer argument was null.
  SDHALL_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  SDHALL_STATUS_INVALID_UTF8 = 2,
  // An argument was outside its documented range (unknown command,
  // unknown mode, class id not previously returned by this engine, ...).
  SDHALL_STATUS_INVALID_ARGUMENT = 3,
  // Quiver or scalar-table text failed to parse.
  SDHALL_STATUS_PARSE_ERROR = 4,
  // The requested run was inconsistent (bad field size, charge row
  // mismatch, ...).
  SDHALL_STATUS_CONFIG_ERROR = 5,
  // An enumeration would exceed the configured budget ceiling.
  SDHALL_STATUS_BUDGET_EXCEEDED = 6,
  // An internal arithmetic invariant failed.
  SDHALL_STATUS_ARITHMETIC_ERROR = 7,
  // Operands from incompatible contexts were combined.
  SDHALL_STATUS_INCOMPATIBLE_OPERANDS = 8,
  // An input/output error occurred.
  SDHALL_STATUS_IO_ERROR = 9,
  // The run completed and produced a report, but at least one check did
  // not come out zero.  The report is still written to the out-pointer.
  SDHALL_STATUS_VERIFICATION_FAILED = 10,
  // A panic was caught at the interface boundary.
  SDHALL_STATUS_PANIC = 11,
} SdhallStatus;

// Opaque handle to a classification context over one quiver and one
// finite field.  Create with [`sdhall_engine_new`], release with
// [`sdhall_engine_free`].
typedef struct SdhallEngine SdhallEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on the calling thread, or
// null if no call on this thread has failed yet.  The pointer stays valid
// until the next failing interface call on the same thread; do not free
// it.
const char *sdhall_last_error_message(void);

// Build an engine from quiver-file text (`vertices:` / `arrow:` lines,
// `#` comments).
//
// `q` must be one of 2, 3, 5, 7.  When `nilpotent_only` is true the
// engine classifies only nilpotent representations.  `budget` caps every
// enumeration the engine runs.  On success writes a handle to `out`;
// release it with [`sdhall_engine_free`].
//
// # Safety
//
// `quiver_text` must be a NUL-terminated string and `out` must point to
// writable memory for one pointer.
enum SdhallStatus sdhall_engine_new(const char *quiver_text,
                                    uint8_t q,
                                    bool nilpotent_only,
                                    uint64_t budget,
                                    struct SdhallEngine **out);

// Release an engine returned by [`sdhall_engine_new`].  Passing null is
// a no-op.
//
// # Safety
//
// `engine` must be null or a handle from [`sdhall_engine_new`] that has
// not already been freed; it must not be used afterwards.
void sdhall_engine_free(struct SdhallEngine *engine);

// Number of quiver vertices the engine was built over.
//
// # Safety
//
// `engine` must be a live handle and `out` must point to writable memory
// for one `size_t`.
enum SdhallStatus sdhall_engine_vertex_count(const struct SdhallEngine *engine, size_t *out);

// List the isomorphism classes with the given dimension vector.
//
// `dims` must have one entry per quiver vertex.  On success writes a
// heap-allocated id array to `ids_out` and its length to `len_out`;
// release the array with [`sdhall_class_ids_free`].  The ids are stable
// for the lifetime of the engine and are accepted by the other
// class-query functions.
//
// # Safety
//
// `engine` must be a live handle, `dims` must point to `dims_len`
// readable entries, and `ids_out` / `len_out` must point to writable
// memory.
enum SdhallStatus sdhall_engine_class_list(const struct SdhallEngine *engine,
                                           const size_t *dims,
                                           size_t dims_len,
                                           uint64_t **ids_out,
                                           size_t *len_out);

// Release an id array returned by [`sdhall_engine_class_list`].  Passing
// a null array is a no-op.
//
// # Safety
//
// `ids` and `len` must be exactly the pair produced by one successful
// [`sdhall_engine_class_list`] call, freed at most once.
void sdhall_class_ids_free(uint64_t *ids, size_t len);

// Render a short human-readable description of a class (dimension vector
// and structural fingerprint).  Release the string with
// [`sdhall_string_free`].
//
// # Safety
//
// `engine` must be a live handle, `class_id` must come from
// [`sdhall_engine_class_list`] on the same engine, and `out` must point
// to writable memory for one pointer.
enum SdhallStatus sdhall_engine_class_describe(const struct SdhallEngine *engine,
                                               uint64_t class_id,
                                               char **out);

// Count the subobjects of the `middle` class that are isomorphic to the
// `sub` class with quotient isomorphic to the `quotient` class (a Hall
// number).
//
// # Safety
//
// `engine` must be a live handle, all three ids must come from
// [`sdhall_engine_class_list`] on the same engine, and `out` must point
// to writable memory for one `uint64_t`.
enum SdhallStatus sdhall_engine_hall_number(const struct SdhallEngine *engine,
                                            uint64_t quotient,
                                            uint64_t sub,
                                            uint64_t middle,
                                            uint64_t *out);

// Release a string returned by this library.  Passing null is a no-op.
//
// # Safety
//
// `s` must be null or a string produced by this library, freed at most
// once.
void sdhall_string_free(char *s);

// Run one of the report-producing commands and hand back the rendered
// report text.
//
// `command` is one of `"cartan"`, `"hallnum"`, `"verify"`,
// `"identities"`; `mode` is `"layered"` or `"charged"`; `qs` lists the
// field sizes to run at.  `charge` (e.g. `"0=2,1=1"`) and `lambda_text`
// (scalar-table rows in the same format as a table file) may be null
// when the mode does not need them.  On success — and on
// `VerificationFailed`, which still renders a full report — writes the
// report to `report_out`; release it with [`sdhall_string_free`].
// Returns `Ok` only when every check in the report came out zero.
//
// # Safety
//
// All pointer arguments must be null or valid: strings NUL-terminated,
// `qs` pointing to `qs_len` readable bytes, `report_out` pointing to
// writable memory for one pointer.  `command`, `quiver_text`, `mode`,
// `qs` and `report_out` must not be null.
enum SdhallStatus sdhall_run_report(const char *command,
                                    const char *quiver_text,
                                    const uint8_t *qs,
                                    size_t qs_len,
                                    size_t lmax,
                                    const char *mode,
                                    const char *charge,
                                    const char *lambda_text,
                                    uint64_t budget,
                                    size_t dim_bound,
                                    bool serial,
                                    char **report_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SDHALL_H */
