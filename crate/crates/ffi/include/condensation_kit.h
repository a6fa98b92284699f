#ifndef CONDENSATION_KIT_H
#define CONDENSATION_KIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CkDetAlgo {
  CK_DET_ALGO_CHIO = 0,
  CK_DET_ALGO_LEIBNIZ = 1,
} CkDetAlgo;

typedef enum CkMode {
  CK_MODE_SYMBOLIC = 0,
  CK_MODE_RANDOM = 1,
} CkMode;

// Status codes returned by every fallible function.
typedef enum CkStatus {
  CK_STATUS_OK = 0,
  CK_STATUS_NULL_POINTER = 1,
  CK_STATUS_INVALID_ARGUMENT = 2,
  CK_STATUS_PARSE = 3,
  CK_STATUS_DIMENSION_MISMATCH = 4,
  CK_STATUS_BOUND_EXCEEDED = 5,
  CK_STATUS_NOT_INTEGRAL_DOMAIN = 6,
  CK_STATUS_DIVISION_BY_ZERO = 7,
  CK_STATUS_INTERNAL = 8,
  CK_STATUS_PANIC = 9,
} CkStatus;

typedef enum CkTheorem {
  CK_THEOREM_CHIO = 0,
  CK_THEOREM_CHIO_GEN = 1,
  CK_THEOREM_SUPERGEN = 2,
  CK_THEOREM_MTT = 3,
} CkTheorem;

// Opaque weighted digraph on vertices `1..=n`.
typedef struct CkGraph CkGraph;

// Opaque square or rectangular matrix over `Z` or `Z/m`.
typedef struct CkMatrix CkMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *ck_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string produced by this library and not yet freed.
void ck_string_free(char *s);

// Builds a `rows x cols` matrix from row-major 64-bit entries.
//
// # Safety
// `data` must point to `rows * cols` readable values; `out` must be writable.
enum CkStatus ck_matrix_from_i64(size_t rows,
                                 size_t cols,
                                 const int64_t *data,
                                 uint64_t modulus,
                                 struct CkMatrix **out);

// Parses a matrix in the text format (`rows cols` header, then rows).
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum CkStatus ck_matrix_parse(const char *text, uint64_t modulus, struct CkMatrix **out);

// # Safety
// `m` must be null or a handle from this library that has not been freed.
void ck_matrix_free(struct CkMatrix *m);

// # Safety
// `m` must be a live handle.
size_t ck_matrix_rows(const struct CkMatrix *m);

// # Safety
// `m` must be a live handle.
size_t ck_matrix_cols(const struct CkMatrix *m);

// Entry `(i, j)`, 1-based, as a decimal string.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum CkStatus ck_matrix_entry(const struct CkMatrix *m, size_t i, size_t j, char **out);

// Exact determinant as a decimal string.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum CkStatus ck_det(const struct CkMatrix *m, enum CkDetAlgo algo, char **out);

// One condensation step on the bottom-right pivot: writes the
// `(n-1) x (n-1)` condensed matrix and the factor `a_nn^(n-2)`.
//
// # Safety
// `m` must be a live handle; `out` and `factor` must be writable.
enum CkStatus ck_condense(const struct CkMatrix *m, struct CkMatrix **out, char **factor);

// Builds a digraph on `n` vertices from a row-major `n x n` weight matrix;
// `weights[(i-1)*n + (j-1)]` is the weight of the arc `i -> j`.
//
// # Safety
// `weights` must point to `n * n` readable values; `out` must be writable.
enum CkStatus ck_graph_from_i64(size_t n,
                                const int64_t *weights,
                                uint64_t modulus,
                                struct CkGraph **out);

// Parses a digraph in the text format (`digraph n`, then `tail head weight`).
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum CkStatus ck_graph_parse(const char *text, uint64_t modulus, struct CkGraph **out);

// # Safety
// `g` must be null or a handle from this library that has not been freed.
void ck_graph_free(struct CkGraph *g);

// Weighted count of spanning arborescences oriented toward `root`
// (0 selects vertex `n`).
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum CkStatus ck_count_arborescences(const struct CkGraph *g, size_t root, char **out);

// Whether the map `i -> images[i-1]` on `1..=n` is n-potent. The map must
// fix `n`.
//
// # Safety
// `images` must point to `n` readable values; `out` must be writable.
enum CkStatus ck_is_n_potent(const size_t *images, size_t n, bool *out);

// Runs an identity sweep. `all_ok` receives whether every case held and
// `cases` (if non-null) the number of cases checked. `trials`, `seed` and
// `modulus` only apply to random mode.
//
// # Safety
// `all_ok` must be writable; `cases` must be null or writable.
enum CkStatus ck_verify(enum CkTheorem theorem,
                        size_t n,
                        enum CkMode mode,
                        size_t trials,
                        uint64_t seed,
                        uint64_t modulus,
                        bool *all_ok,
                        size_t *cases);

// Library version as a static NUL-terminated string.
const char *ck_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONDENSATION_KIT_H */
