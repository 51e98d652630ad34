#ifndef REACHOBS_H
#define REACHOBS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum RoStatus {
  RO_STATUS_OK = 0,
  RO_STATUS_NULL_POINTER = 1,
  RO_STATUS_DIMENSION = 2,
  RO_STATUS_INFEASIBLE = 3,
  RO_STATUS_PARSE = 4,
  RO_STATUS_INVALID_ARGUMENT = 5,
  RO_STATUS_PANIC = 6,
} RoStatus;

/**
 * Opaque exact rational matrix.
 */
typedef struct RoMatrix RoMatrix;

/**
 * Opaque `(V, W, p, q, k, m)` problem.
 */
typedef struct RoProblem RoProblem;

typedef struct RoFeasibility {
  bool cond_kernel;
  bool cond_image;
  bool cond_interlock;
  bool feasible;
} RoFeasibility;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

struct RoMatrix *ro_matrix_zeros(uintptr_t rows, uintptr_t cols);

struct RoMatrix *ro_matrix_identity(uintptr_t n);

/**
 * Builds a matrix from `rows * cols` row-major integers. Returns null if
 * `data` is null while the matrix is nonempty.
 */
struct RoMatrix *ro_matrix_from_i64(uintptr_t rows, uintptr_t cols, const int64_t *data);

void ro_matrix_free(struct RoMatrix *m);

uintptr_t ro_matrix_rows(const struct RoMatrix *m);

uintptr_t ro_matrix_cols(const struct RoMatrix *m);

enum RoStatus ro_matrix_set_ratio(struct RoMatrix *m,
                                  uintptr_t row,
                                  uintptr_t col,
                                  int64_t num,
                                  int64_t den);

/**
 * Sets an entry from its text form (`"p"` or `"p/q"`).
 */
enum RoStatus ro_matrix_set_str(struct RoMatrix *m, uintptr_t row, uintptr_t col, const char *text);

/**
 * Canonical text of one entry, or null on error.
 */
char *ro_matrix_get_str(const struct RoMatrix *m, uintptr_t row, uintptr_t col);

bool ro_matrix_equal(const struct RoMatrix *a, const struct RoMatrix *b);

enum RoStatus ro_matrix_from_json(const char *text, struct RoMatrix **out);

/**
 * Matrix document JSON, or null on error.
 */
char *ro_matrix_to_json(const struct RoMatrix *m);

void ro_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null.
 */
const char *ro_last_error(void);

enum RoStatus ro_matrix_rank(const struct RoMatrix *m, uintptr_t *out);

enum RoStatus ro_g1_inverse(const struct RoMatrix *f, struct RoMatrix **out);

enum RoStatus ro_is_g1_inverse(const struct RoMatrix *f, const struct RoMatrix *y, bool *out);

enum RoStatus ro_reachability_matrix(const struct RoMatrix *a,
                                     const struct RoMatrix *b,
                                     uintptr_t k,
                                     struct RoMatrix **out);

enum RoStatus ro_observability_matrix(const struct RoMatrix *a,
                                      const struct RoMatrix *c,
                                      uintptr_t m,
                                      struct RoMatrix **out);

/**
 * Copies `v` and `w` into a new problem handle.
 */
enum RoStatus ro_problem_new(const struct RoMatrix *v,
                             const struct RoMatrix *w,
                             uintptr_t p,
                             uintptr_t q,
                             uintptr_t k,
                             uintptr_t m,
                             struct RoProblem **out);

void ro_problem_free(struct RoProblem *p);

enum RoStatus ro_check_feasibility(const struct RoProblem *prob, struct RoFeasibility *out);

/**
 * Recovers `(A, B, C)`. A null `z` means the zero free parameter.
 * Returns `RO_STATUS_INFEASIBLE` when no triple exists.
 */
enum RoStatus ro_realize(const struct RoProblem *prob,
                         const struct RoMatrix *z,
                         struct RoMatrix **out_a,
                         struct RoMatrix **out_b,
                         struct RoMatrix **out_c);

/**
 * One common solution of `F·X = C`, `X·H = D`: the particular solution
 * plus the free parameter `z` (null for zero) pushed through both
 * annihilators.
 */
enum RoStatus ro_solve_pair(const struct RoMatrix *f,
                            const struct RoMatrix *c,
                            const struct RoMatrix *h,
                            const struct RoMatrix *d,
                            const struct RoMatrix *z,
                            struct RoMatrix **out_x);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REACHOBS_H */
