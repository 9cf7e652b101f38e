#ifndef KATO_H
#define KATO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KatoClass {
  KATO_CLASS_ENOKI = 0,
  KATO_CLASS_INOUE_HIRZEBRUCH = 1,
  KATO_CLASS_INTERMEDIATE_SIMPLE = 2,
  KATO_CLASS_INTERMEDIATE_MULTI_TREE = 3,
} KatoClass;

typedef enum KatoHermitian {
  KATO_HERMITIAN_ANTICANONICAL_CANDIDATE = 0,
  KATO_HERMITIAN_VECTOR_FIELD_CANDIDATE = 1,
  KATO_HERMITIAN_BI_HERMITIAN_CANDIDATE = 2,
} KatoHermitian;

typedef enum KatoStatus {
  KATO_STATUS_OK = 0,
  KATO_STATUS_NULL_POINTER = 1,
  KATO_STATUS_INVALID_UTF8 = 2,
  KATO_STATUS_PARSE = 3,
  KATO_STATUS_TOO_LARGE = 4,
  KATO_STATUS_NOT_SIMPLE = 5,
  KATO_STATUS_SELF_LOOP = 6,
  KATO_STATUS_SINGULAR_SYSTEM = 7,
  KATO_STATUS_INDEX_NOT_ONE = 8,
  KATO_STATUS_ZERO_PARAMETER = 9,
  KATO_STATUS_EPSILON_INCONSISTENT = 10,
  KATO_STATUS_PARAMETER_COUNT = 11,
  KATO_STATUS_INVALID_ARGUMENT = 12,
  KATO_STATUS_OVERFLOW = 13,
  KATO_STATUS_UNAVAILABLE = 14,
  KATO_STATUS_PANIC = 15,
} KatoStatus;

// Opaque handle to a validated, canonically rotated sequence.
typedef struct KatoSequence KatoSequence;

typedef struct KatoDeformation {
  uint64_t b;
  uint64_t l_total;
  uint8_t epsilon;
  uint8_t eta;
  int64_t chi_tangent;
  int64_t chi_log;
  uint64_t h1_log;
  uint64_t h1_theta_minus_d;
  uint64_t h1_normal;
  uint64_t h0_theta_d;
  bool via_double_cover;
} KatoDeformation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses `"[s2 r2]"` or `"4,2,2,2"`. `max_b2 = 0` uses the default bound
// (or `KATO_MAX_B2`).
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum KatoStatus kato_sequence_parse(const char *text, size_t max_b2, struct KatoSequence **out);

// Builds a sequence from `len` expanded entries.
//
// # Safety
// `entries` must point to `len` readable values and `out` be valid.
enum KatoStatus kato_sequence_from_entries(const uint32_t *entries,
                                           size_t len,
                                           size_t max_b2,
                                           struct KatoSequence **out);

// # Safety
// `seq` must come from this library and not be freed twice. Null is a no-op.
void kato_sequence_free(struct KatoSequence *seq);

// Second Betti number; 0 for a null handle.
//
// # Safety
// `seq` must be null or a live handle.
size_t kato_sequence_b2(const struct KatoSequence *seq);

// Sum of the entries; 0 for a null handle.
//
// # Safety
// `seq` must be null or a live handle.
uint64_t kato_sequence_dloussky_number(const struct KatoSequence *seq);

// Canonical symbolic form, e.g. `"[s2 r2]"`.
//
// # Safety
// `seq` must be a live handle and `out` valid.
enum KatoStatus kato_sequence_symbolic(const struct KatoSequence *seq, char **out);

// # Safety
// `seq` must be a live handle and `out` valid.
enum KatoStatus kato_sequence_class(const struct KatoSequence *seq, enum KatoClass *out);

// Index of the surface. Fails with `KATO_STATUS_UNAVAILABLE` for Enoki and
// nodal Inoue-Hirzebruch graphs, `KATO_STATUS_OVERFLOW` beyond 64 bits.
//
// # Safety
// `seq` must be a live handle and `out` valid.
enum KatoStatus kato_index(const struct KatoSequence *seq, uint64_t *out);

// Tip multiplicity of a simple sequence as `"num/den"`.
//
// # Safety
// `seq` must be a live handle and `out` valid.
enum KatoStatus kato_tip_multiplicity(const struct KatoSequence *seq, char **out);

// Full invariant report as JSON; `epsilon` is 0 or 1.
//
// # Safety
// `seq` must be a live handle and `out` valid.
enum KatoStatus kato_report_json(const struct KatoSequence *seq, uint8_t epsilon, char **out);

// Dual graph in DOT format.
//
// # Safety
// `seq` must be a live handle and `out` valid.
enum KatoStatus kato_graph_dot(const struct KatoSequence *seq, char **out);

// # Safety
// `seq` must be a live handle and `out` valid.
enum KatoStatus kato_deformation(const struct KatoSequence *seq,
                                 uint8_t epsilon,
                                 struct KatoDeformation *out);

// Evaluates the germ at `z = (re1, im1, re2, im2)`, writing the image in
// the same layout to `out`. `params` holds `n_params` interleaved
// `(re, im)` pairs: `a_0 … a_(l-1), a_(l+K)`. Returns
// `KATO_STATUS_OVERFLOW` if the result is not finite (the values are still
// written).
//
// # Safety
// `params` must hold `2 * n_params` doubles, `z` and `out` four each.
enum KatoStatus kato_germ_eval(const struct KatoSequence *seq,
                               const double *params,
                               size_t n_params,
                               int generic,
                               const double *z,
                               double *out);

// Classifies an index-1 surface by `|a₀|`.
//
// # Safety
// `seq` must be a live handle and `out` valid.
enum KatoStatus kato_classify_hermitian(const struct KatoSequence *seq,
                                        double a0_re,
                                        double a0_im,
                                        enum KatoHermitian *out);

// Releases a string returned by this library. Null is a no-op.
//
// # Safety
// `s` must come from this library and not be freed twice.
void kato_string_free(char *s);

// Message for the last failed call on this thread, or null. Valid until
// the next library call on the same thread.
const char *kato_last_error_message(void);

// Static description of a status code.
const char *kato_status_message(enum KatoStatus status);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* KATO_H */
