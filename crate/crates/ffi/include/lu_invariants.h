#ifndef LU_INVARIANTS_H
#define LU_INVARIANTS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum LuStatus {
  LU_STATUS_OK = 0,
  LU_STATUS_NULL_POINTER = 1,
  LU_STATUS_INVALID_ARGUMENT = 2,
  LU_STATUS_PARSE = 3,
  LU_STATUS_VALIDATION = 4,
  LU_STATUS_NUMERICAL = 5,
  LU_STATUS_INCOMPARABLE = 6,
  LU_STATUS_IO = 7,
  LU_STATUS_BUFFER_TOO_SMALL = 8,
  LU_STATUS_PANIC = 9,
} LuStatus;

// A computed invariant fingerprint.
typedef struct LuFingerprint LuFingerprint;

// A validated density matrix.
typedef struct LuState LuState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer is
// valid until the next call into this library on the same thread.
const char *luinv_last_error_message(void);

// Reads and validates a JSON state file.
//
// # Safety
// `path` must be a NUL-terminated string and `out` a writable pointer.
enum LuStatus luinv_state_read(const char *path, struct LuState **out);

// Builds a state from a row-major `side × side` matrix, `side = Π dims`.
// `imag` may be null for a real matrix.
//
// # Safety
// `dims` must hold `parties` values; `real` (and `imag` when non-null) must
// hold `side²` values.
enum LuStatus luinv_state_from_parts(const size_t *dims,
                                     size_t parties,
                                     const double *real,
                                     const double *imag,
                                     struct LuState **out);

// Draws a random state of the given rank (0 means full rank).
//
// # Safety
// `dims` must hold `parties` values and `out` must be writable.
enum LuStatus luinv_state_random(const size_t *dims,
                                 size_t parties,
                                 size_t rank,
                                 uint64_t seed,
                                 struct LuState **out);

// Writes a state in the JSON state format.
//
// # Safety
// `state` must come from this library and `path` be NUL-terminated.
enum LuStatus luinv_state_write(const struct LuState *state, const char *path);

// Number of parties, or 0 for a null handle.
//
// # Safety
// `state` must be null or come from this library.
size_t luinv_state_parties(const struct LuState *state);

// # Safety
// `state` must be null or come from this library, and not be used again.
void luinv_state_free(struct LuState *state);

// Computes the fingerprint. Negative `max_alpha` / `max_beta` select the
// default power ranges; `max_beta = 0` is rejected.
//
// # Safety
// `state` must come from this library and `out` must be writable.
enum LuStatus luinv_fingerprint_compute(const struct LuState *state,
                                        int64_t max_alpha,
                                        int64_t max_beta,
                                        struct LuFingerprint **out);

// Number of entries, or 0 for a null handle.
//
// # Safety
// `fp` must be null or come from this library.
size_t luinv_fingerprint_len(const struct LuFingerprint *fp);

// Value of the entry at `index` (canonical key order).
//
// # Safety
// `fp` must come from this library and `out` must be writable.
enum LuStatus luinv_fingerprint_value(const struct LuFingerprint *fp, size_t index, double *out);

// Copies the key at `index` into `buf` with a trailing NUL. `needed`, when
// non-null, receives the key length without the NUL; a short buffer yields
// `BufferTooSmall` and is left untouched.
//
// # Safety
// `fp` must come from this library; `buf` must hold `buf_len` bytes.
enum LuStatus luinv_fingerprint_key(const struct LuFingerprint *fp,
                                    size_t index,
                                    char *buf,
                                    size_t buf_len,
                                    size_t *needed);

// Looks a value up by key, e.g. `"T1.iii.beta=1"`.
//
// # Safety
// `fp` must come from this library, `key` be NUL-terminated, `out` writable.
enum LuStatus luinv_fingerprint_get(const struct LuFingerprint *fp, const char *key, double *out);

// JSON report of the fingerprint; release with [`luinv_string_free`].
//
// # Safety
// `fp` must come from this library and `out` must be writable.
enum LuStatus luinv_fingerprint_to_json(const struct LuFingerprint *fp, char **out);

// # Safety
// `s` must be null or a string returned by this library.
void luinv_string_free(char *s);

// # Safety
// `fp` must be null or come from this library, and not be used again.
void luinv_fingerprint_free(struct LuFingerprint *fp);

// Compares two fingerprints. `distinct` receives 1 for DISTINCT and 0 for
// INCONCLUSIVE; `witnesses` (optional) the number of differing entries.
// Fingerprints of different shapes give `Incomparable`.
//
// # Safety
// `a` and `b` must come from this library; `distinct` must be writable.
enum LuStatus luinv_compare(const struct LuFingerprint *a,
                            const struct LuFingerprint *b,
                            double tolerance,
                            int32_t *distinct,
                            size_t *witnesses);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LU_INVARIANTS_H */
