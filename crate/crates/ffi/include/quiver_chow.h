#ifndef QUIVER_CHOW_H
#define QUIVER_CHOW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first four agree with the exit codes of the CLI.
 */
typedef enum QcStatus {
  QC_STATUS_OK = 0,
  QC_STATUS_INVALID_INPUT = 1,
  QC_STATUS_ASSUMPTION_VIOLATED = 2,
  QC_STATUS_STRUCTURAL = 3,
  QC_STATUS_NULL_POINTER = 4,
  QC_STATUS_PANIC = 5,
} QcStatus;

/**
 * Opaque handle to a built Chow ring presentation.
 */
typedef struct QcModuli QcModuli;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build `K_m(d,e)` with canonical stability.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum QcStatus qc_moduli_new_kronecker(uint32_t m, uint32_t d, uint32_t e, struct QcModuli **out);

/**
 * Build from a JSON spec `{"vertices", "arrows", "d", "theta"?}`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` valid for one write.
 */
enum QcStatus qc_moduli_new_from_json(const char *spec, struct QcModuli **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `handle` must come from a `qc_moduli_new_*` call and not be used again.
 */
void qc_moduli_free(struct QcModuli *handle);

/**
 * Dimension of the moduli space.
 *
 * # Safety
 * `handle` must be live and `out` valid for one write.
 */
enum QcStatus qc_moduli_dimension(const struct QcModuli *handle, uint32_t *out);

/**
 * Ranks of the Chow groups in degrees `0..=dim`. Writes at most `capacity`
 * entries to `ranks` and the total count to `count`.
 *
 * # Safety
 * `handle` must be live, `ranks` valid for `capacity` writes (or null when
 * `capacity` is 0) and `count` valid for one write.
 */
enum QcStatus qc_moduli_chow_ranks(const struct QcModuli *handle,
                                   size_t *ranks,
                                   size_t capacity,
                                   size_t *count);

/**
 * Full invariant report as a JSON object. Computed once per handle.
 *
 * # Safety
 * `handle` must be live and `out` valid for one write; release the string
 * with `qc_string_free`.
 */
enum QcStatus qc_moduli_report_json(struct QcModuli *handle, char **out);

/**
 * Degree of the ample generator, as a decimal string.
 *
 * # Safety
 * As for `qc_moduli_report_json`.
 */
enum QcStatus qc_moduli_degree(struct QcModuli *handle, char **out);

/**
 * Message of the last failure on this thread, or null. Owned by the
 * library and valid until the next call on this thread.
 */
const char *qc_last_error(void);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used again.
 */
void qc_string_free(char *s);

/**
 * Library version, static storage.
 */
const char *qc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUIVER_CHOW_H */
