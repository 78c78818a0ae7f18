/* framekit: analysis and constructive repair of finite frames in R^n.
 *
 * C interface of the framekit shared library.  All functions are pure and
 * thread-safe; handles returned by fk_* constructors are owned by the caller
 * and released with the matching fk_*_free.  Functions report failure through
 * fk_status return codes; fk_last_error_message() gives a human-readable
 * detail string for the most recent failing call on the current thread.
 *
 * A frame is an ordered family of k vectors in R^n, stored row-major:
 * coords[j*dim + i] is coordinate i of vector j.  The family is not required
 * to span R^n; operations that need the frame property report
 * FK_ERROR_NOT_A_FRAME when it fails.
 */

#ifndef FRAMEKIT_H
#define FRAMEKIT_H

#include <stddef.h>

#if defined(_WIN32)
#define FK_API __declspec(dllexport)
#else
#define FK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fk_status {
  FK_OK = 0,
  FK_ERROR_INVALID_ARGUMENT = 1,  /* null pointer, bad shape, non-finite input */
  FK_ERROR_DIMENSION_MISMATCH = 2,
  FK_ERROR_NOT_A_FRAME = 3,       /* family does not span R^n */
  FK_ERROR_NOT_TIGHT = 4,         /* operation requires a tight frame */
  FK_ERROR_SINGULAR_OPERATOR = 5,
  FK_ERROR_NON_SYMMETRIC = 6,
  FK_ERROR_NO_CONVERGENCE = 7,
  FK_ERROR_DOMAIN = 8,            /* scalar parameter outside its domain */
  FK_ERROR_INVALID_INDICES = 9,
  FK_ERROR_WRONG_DIMENSION = 10,  /* operation restricted to a fixed dimension */
  FK_ERROR_ALL_ZERO = 11,
  FK_ERROR_INTERNAL = 12
} fk_status;

/* Stable identifier for a status code, e.g. "not_a_frame". */
FK_API const char* fk_status_name(fk_status status);

/* Detail message for the most recent failing call on this thread.
 * Empty string if no call has failed yet. */
FK_API const char* fk_last_error_message(void);

/* ------------------------------------------------------------------ */
/* Frames                                                              */

typedef struct fk_frame fk_frame;

/* Creates a frame of `count` vectors in R^dim from row-major coords
 * (count*dim doubles, vector j at coords[j*dim]).  All entries must be
 * finite; dim >= 1, count >= 1. */
FK_API fk_status fk_frame_create(size_t dim, size_t count, const double* coords,
                                 fk_frame** out);
FK_API void fk_frame_free(fk_frame* frame);

FK_API size_t fk_frame_dim(const fk_frame* frame);
FK_API size_t fk_frame_count(const fk_frame* frame);
/* Copies the row-major coordinate block (count*dim doubles) into `out`. */
FK_API fk_status fk_frame_coords(const fk_frame* frame, double* out);

/* Synthesis matrix: dim x count, row-major, column j = vector j. */
FK_API fk_status fk_synthesis_matrix(const fk_frame* frame, double* out);
/* Frame operator S = T T^t: dim x dim, row-major, symmetric PSD. */
FK_API fk_status fk_frame_operator(const fk_frame* frame, double* out);

/* ------------------------------------------------------------------ */
/* Analysis                                                            */

typedef struct fk_report {
  double lower_bound;      /* optimal A = smallest eigenvalue of S */
  double upper_bound;      /* optimal B = largest eigenvalue of S */
  double condition_number; /* B / A */
  int is_tight;            /* condition_number - 1 <= 1e-8 */
} fk_report;

/* Optimal frame bounds and condition number.  `eigenvalues` may be NULL;
 * otherwise it receives the full ascending spectrum of S (dim doubles).
 * Fails with FK_ERROR_NOT_A_FRAME when the family does not span. */
FK_API fk_status fk_analyze(const fk_frame* frame, fk_report* report,
                            double* eigenvalues);

/* Canonical dual frame {S^-1 v_j}. */
FK_API fk_status fk_canonical_dual(const fk_frame* frame, fk_frame** dual);

/* Reconstruction x = sum_j <x, S^-1 v_j> v_j; `x` and `out` hold dim doubles. */
FK_API fk_status fk_reconstruct(const fk_frame* frame, const double* x, double* out);

/* (1/n) sum_j ||v_j||^2; equals the frame bound when the frame is tight. */
FK_API fk_status fk_tight_bound_identity(const fk_frame* frame, double* out);

/* ------------------------------------------------------------------ */
/* Perturbations                                                       */

/* The eigenvalue image lambda + 2r + r^2/lambda of the rank-preserving
 * perturbation; requires lambda > 0 and r > 0. */
FK_API fk_status fk_spectral_shift(double lambda, double r, double* out);

/* One condition-number-reducing step: perturbs each vector by
 * r * S^-1 v_j with r = safety * min(epsilon / max_j ||S^-1 v_j||, A).
 * epsilon > 0, safety in (0,1).  On success `perturbed` receives a new
 * frame, `r_used` the step size, `before`/`after` the reports of the input
 * and the perturbed frame.  `deltas` may be NULL or receive the count*dim
 * row-major perturbation block. */
FK_API fk_status fk_improve(const fk_frame* frame, double epsilon, double safety,
                            fk_frame** perturbed, double* r_used,
                            fk_report* before, fk_report* after, double* deltas);

/* Iterative tightening: repeats the perturbation with r_m = sqrt(A B) of the
 * previous step until the frame is tight, in at most dim-1 steps. */
typedef struct fk_trace fk_trace;

FK_API fk_status fk_tighten(const fk_frame* frame, fk_trace** trace);
FK_API void fk_trace_free(fk_trace* trace);

FK_API size_t fk_trace_step_count(const fk_trace* trace);
/* Per-step data; any output pointer may be NULL.  bounds_* hold {A, B};
 * eigenvalues_after holds dim doubles (ascending). */
FK_API fk_status fk_trace_step(const fk_trace* trace, size_t step, double* r,
                               double* bounds_before, double* bounds_after,
                               double* eigenvalues_after);
/* Borrowed references, valid until fk_trace_free. */
FK_API const fk_frame* fk_trace_step_frame(const fk_trace* trace, size_t step);
FK_API const fk_frame* fk_trace_final_frame(const fk_trace* trace);
/* Total perturbation final - original (count*dim doubles, row-major). */
FK_API fk_status fk_trace_total_deltas(const fk_trace* trace, double* deltas);

/* Largest per-vector perturbation norm guaranteed to preserve the frame
 * property: sqrt(A / k). */
FK_API fk_status fk_stability_radius(const fk_frame* frame, double* out);

/* Paley-Wiener certificate for `perturbed` as an additive perturbation of
 * `base` (lambda fixed to 0). */
typedef struct fk_pw_certificate {
  double lambda_const;     /* always 0 */
  double mu_crude;         /* sqrt(k) * max_j ||delta_j|| */
  double mu_sharp;         /* operator norm of the delta synthesis matrix */
  int admissible;          /* mu_sharp / sqrt(A) < 1 */
  double guaranteed_lower; /* A (1 - mu_sharp/sqrt(A))^2 */
  double guaranteed_upper; /* B (1 + mu_sharp/sqrt(B))^2 */
} fk_pw_certificate;

FK_API fk_status fk_pw_check(const fk_frame* base, const fk_frame* perturbed,
                             fk_pw_certificate* cert);

/* Vectorwise convex blend {(1-t_j) f_j + t_j g_j}.  `ts` holds count doubles.
 * The blend is certified a frame when tau = max |t_j| is below the threshold
 * sqrt(A)/mu; an uncertified blend is still returned with certified = 0. */
typedef struct fk_blend_certificate {
  double tau;              /* max |t_j| */
  double threshold;        /* sqrt(A)/mu; +inf when mu = 0 */
  double mu_sharp;
  int certified;
  double guaranteed_lower; /* meaningful only when certified */
  double guaranteed_upper;
} fk_blend_certificate;

FK_API fk_status fk_blend(const fk_frame* base, const fk_frame* other,
                          const double* ts, fk_frame** blended,
                          fk_blend_certificate* cert);

/* ------------------------------------------------------------------ */
/* Appending and erasing vectors of a tight frame                      */

typedef struct fk_append_verdict {
  int combined_tight;    /* base + added is tight (added operator = c I) */
  int appended_tight;    /* added family is itself a tight frame (c > 0) */
  int degenerate;        /* added family has (numerically) zero operator */
  int has_bounds;        /* appended_bound / combined_bound are meaningful */
  double appended_bound; /* c */
  double combined_bound; /* A + c */
} fk_append_verdict;

/* Requires `base` to be tight. */
FK_API fk_status fk_append_check(const fk_frame* base, const fk_frame* added,
                                 fk_append_verdict* verdict);

typedef struct fk_erasure_verdict {
  size_t erased_count;
  int remainder_is_frame;
  int remainder_tight;
  int erased_tight;            /* erased operator = c I for some c >= 0 */
  int has_remainder_report;
  fk_report remainder_report;  /* valid when has_remainder_report */
  const char* rule_applied;    /* static string, one of the two erasure rules */
} fk_erasure_verdict;

/* Requires `base` to be tight.  `indices` holds index_count distinct 0-based
 * positions forming a proper nonempty subset.  `remainder_eigenvalues` may be
 * NULL; when the remainder is a frame it receives dim doubles. */
FK_API fk_status fk_erase_check(const fk_frame* base, const size_t* indices,
                                size_t index_count, fk_erasure_verdict* verdict,
                                double* remainder_eigenvalues);

/* ------------------------------------------------------------------ */
/* R^2 diagonalizing perturbation                                      */

typedef struct fk_diag_result {
  size_t chosen_vector; /* 0-based index of the perturbed vector */
  size_t chosen_row;    /* 0-based row of the largest-|entry| coordinate */
  size_t perturb_axis;  /* 0-based row the perturbation acts on (1 - chosen_row) */
  double epsilon;       /* perturbation magnitude along e_{perturb_axis} */
  int still_frame;      /* both diagonal entries of the new operator positive */
} fk_diag_result;

/* Single-entry perturbation making the frame operator diagonal; dim must
 * be 2 and at least one vector nonzero. */
FK_API fk_status fk_diagonalize_r2(const fk_frame* frame, fk_diag_result* result,
                                   fk_frame** perturbed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FRAMEKIT_H */
