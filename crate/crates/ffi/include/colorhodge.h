#ifndef COLORHODGE_H
#define COLORHODGE_H

/* Generated by the colorhodge-ffi build script; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes shared by every fallible function in this ABI.
typedef enum ChStatus {
  // The call succeeded.
  CH_OK = 0,
  // The input was malformed (bad JSON, bad vertex labels, empty graphs).
  CH_INPUT_ERROR = 2,
  // The request exceeded a size guard.
  CH_BUDGET_EXCEEDED = 3,
  // An internal cross-check failed; the result cannot be trusted.
  CH_INVARIANT_VIOLATION = 4,
  // A required pointer argument was null.
  CH_NULL_POINTER = 5,
  // A string argument was not valid UTF-8.
  CH_INVALID_UTF8 = 6,
  // The library panicked; the call had no effect.
  CH_PANIC = 7,
} ChStatus;

// An immutable graph sequence handle created by [`ch_sequence_from_json`].
typedef struct ChSequence ChSequence;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns the library version as a static string. Never null; do not free.
const char *ch_version(void);

// Returns a static description of a status code. Never null; do not free.
const char *ch_status_message(enum ChStatus status);

// Parses a graph sequence from a JSON document of the form
// `{"n": 4, "graphs": [[[1,2]], [[3,4]]]}` (1-based vertex labels).
// On success `*out` owns the handle; release it with [`ch_sequence_free`].
//
// # Safety
// `json` must be NUL-terminated and `out` must be a valid pointer.
enum ChStatus ch_sequence_from_json(const char *json, struct ChSequence **out);

// Releases a handle created by [`ch_sequence_from_json`]. Null is a no-op.
//
// # Safety
// `seq` must be null or a pointer returned by [`ch_sequence_from_json`]
// that has not already been freed.
void ch_sequence_free(struct ChSequence *seq);

// Reports the number of vertices (`*out_n`) and member graphs (`*out_m`).
// Either out-parameter may be null to skip it.
//
// # Safety
// `seq` must be a live handle from [`ch_sequence_from_json`].
enum ChStatus ch_sequence_order(const struct ChSequence *seq, size_t *out_n, size_t *out_m);

// Writes the sequence chromatic polynomial to `*out`, formatted in the
// variable `L`, e.g. `L^4 - L^2`. Free the string with [`ch_string_free`].
//
// # Safety
// `seq` must be a live handle and `out` a valid pointer.
enum ChStatus ch_chromatic_polynomial(const struct ChSequence *seq, char **out);

// Writes the Hodge-piece dimension table as CSV with the columns
// `kind,degree,piece,dimension`, where `kind` is `chain` or `homology`.
// Pass `max_n = 0` to use the default guard. Free with [`ch_string_free`].
//
// # Safety
// `seq` must be a live handle and `out_csv` a valid pointer.
enum ChStatus ch_hodge_table_csv(const struct ChSequence *seq, size_t max_n, char **out_csv);

// Checks the Euler-characteristic identity for the sequence through both
// the chain-level and homology-level routes. `*out_all_match` reports the
// verdict and `*out_csv` receives a row-per-piece CSV with the columns
// `j,euler_chain,euler_homology,expected,match`. Pass `max_n = 0` for the
// default guard. Free the CSV with [`ch_string_free`].
//
// # Safety
// `seq` must be a live handle; `out_all_match` and `out_csv` must be valid.
enum ChStatus ch_verify_theorem(const struct ChSequence *seq,
                                size_t max_n,
                                bool *out_all_match,
                                char **out_csv);

// Decides whether the sequence is diagonally cycle-free. `*out_free`
// receives the verdict; when the sequence fails, `*out_witness` receives a
// human-readable counterexample (otherwise it is set to null). Free the
// witness with [`ch_string_free`].
//
// # Safety
// `seq` must be a live handle; `out_free` and `out_witness` must be valid.
enum ChStatus ch_diagonally_cycle_free(const struct ChSequence *seq,
                                       bool *out_free,
                                       char **out_witness);

// Releases a string returned through a `char **` out-parameter. Null is a
// no-op.
//
// # Safety
// `s` must be null or a string produced by this library that has not
// already been freed.
void ch_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COLORHODGE_H */
