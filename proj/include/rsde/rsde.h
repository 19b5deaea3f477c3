/*
 * C interface of the reflected-equation library.
 *
 * All functions return an RsdeStatus. On failure the message of the most
 * recent error on the calling thread is available from rsde_last_error().
 * Handles are opaque, immutable after creation, and may be shared across
 * threads; each must be released with its matching *_destroy function.
 * Strings returned through char** are heap allocated and released with
 * rsde_free_string().
 */
#ifndef RSDE_H
#define RSDE_H

#include <stddef.h>
#include <stdint.h>

#if defined(RSDE_BUILDING_LIBRARY)
#define RSDE_EXPORT __attribute__((visibility("default")))
#else
#define RSDE_EXPORT
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum RsdeStatus {
  RSDE_SUCCESS = 0,
  RSDE_NON_MONOTONE_GRID = 1,
  RSDE_LENGTH_MISMATCH = 2,
  RSDE_NON_FINITE_VALUE = 3,
  RSDE_NEGATIVE_TIME = 4,
  RSDE_INVALID_P = 5,
  RSDE_INVALID_PARAMETER = 6,
  RSDE_BARRIER_ABOVE_START = 7,
  RSDE_DIMENSION_MISMATCH = 8,
  RSDE_DOMAIN_ERROR = 9,
  RSDE_INVALID_EXPONENTS = 10,
  RSDE_INVALID_HURST = 11,
  RSDE_EMBEDDING_FAILURE = 12,
  RSDE_GRID_MISMATCH = 13,
  RSDE_UNKNOWN_KIND = 14,
  RSDE_COEFFICIENT_EVALUATION_FAILURE = 15,
  RSDE_INADMISSIBLE_START = 16,
  RSDE_PARTITION_OVERFLOW = 17,
  RSDE_NO_CONVERGENCE = 18,
  RSDE_PARSE_ERROR = 19,
  RSDE_IO_ERROR = 20,
  RSDE_INVALID_HANDLE = 21,
  RSDE_UNKNOWN_ERROR = 22
} RsdeStatus;

typedef enum RsdeScheme { RSDE_SCHEME_UNIFORM = 0, RSDE_SCHEME_ADAPTIVE = 1 } RsdeScheme;

typedef struct RsdePath_* RsdePath;
typedef struct RsdeProblem_* RsdeProblem;
typedef struct RsdeSolution_* RsdeSolution;

/* Errors and strings */
RSDE_EXPORT const char* rsde_status_name(RsdeStatus status);
RSDE_EXPORT const char* rsde_last_error(void);
RSDE_EXPORT void rsde_free_string(char* text);

/* Step paths. `values` is row-major with `dim` entries per grid time. */
RSDE_EXPORT RsdeStatus rsde_path_create(const double* times, size_t count, const double* values, size_t dim,
                                        RsdePath* out);
RSDE_EXPORT RsdeStatus rsde_path_destroy(RsdePath path);
RSDE_EXPORT RsdeStatus rsde_path_shape(RsdePath path, size_t* count, size_t* dim);
RSDE_EXPORT RsdeStatus rsde_path_copy_data(RsdePath path, double* times, double* values);
RSDE_EXPORT RsdeStatus rsde_path_eval(RsdePath path, double t, double* out);
RSDE_EXPORT RsdeStatus rsde_path_left_limit(RsdePath path, double t, double* out);
RSDE_EXPORT RsdeStatus rsde_path_read_csv(const char* file, RsdePath* out);
RSDE_EXPORT RsdeStatus rsde_path_write_csv(RsdePath path, const char* file);
RSDE_EXPORT RsdeStatus rsde_path_to_csv(RsdePath path, char** out);
/* v_p, V_p = v_p^(1/p) and V_p + |x_a| over the window [a, b]. */
RSDE_EXPORT RsdeStatus rsde_path_p_variation(RsdePath path, double p, double a, double b, double* out);
RSDE_EXPORT RsdeStatus rsde_path_p_variation_seminorm(RsdePath path, double p, double a, double b, double* out);
RSDE_EXPORT RsdeStatus rsde_path_variation_norm(RsdePath path, double p, double a, double b, double* out);
RSDE_EXPORT RsdeStatus rsde_path_running_max(RsdePath path, RsdePath* out);

/* Reflection map */
RSDE_EXPORT RsdeStatus rsde_skorokhod_solve(RsdePath input, RsdePath barrier, RsdePath* x, RsdePath* k);
/* CSV `id,lhs,rhs,margin,pass`; *all_pass is 1 when every row passes. */
RSDE_EXPORT RsdeStatus rsde_skorokhod_check(RsdePath y, RsdePath l, RsdePath y2, RsdePath l2, double p, char** csv,
                                            int* all_pass);

RSDE_EXPORT RsdeStatus rsde_zeta(double s, double* out);

/* Fractional Brownian motion on {k T / n}, stream (seed, path_index). */
RSDE_EXPORT RsdeStatus rsde_fbm_sample(double hurst, double horizon, size_t steps, uint64_t seed,
                                       uint64_t path_index, RsdePath* out);

/* Scenario description; string fields are NUL-terminated preset names. */
typedef struct RsdeScenario {
  char coefficients[32];
  char driver[32];
  char fv_driver[32];
  char barrier[32];
  char sigma[32];
  size_t dim;
  double hurst;
  double horizon;
  size_t driver_steps;
  double x0;
  double barrier_level;
  double barrier_amplitude;
  double barrier_frequency;
  double jump_time;
  double jump_size;
  double p;
} RsdeScenario;

RSDE_EXPORT RsdeStatus rsde_scenario_default(RsdeScenario* out);
RSDE_EXPORT RsdeStatus rsde_scenario_preset(const char* name, RsdeScenario* out);
RSDE_EXPORT RsdeStatus rsde_problem_create(const RsdeScenario* scenario, uint64_t seed, uint64_t replicate,
                                           RsdeProblem* out);
RSDE_EXPORT RsdeStatus rsde_problem_destroy(RsdeProblem problem);

RSDE_EXPORT RsdeStatus rsde_solve_fixed(RsdeProblem problem, RsdeScheme scheme, size_t n, RsdeSolution* out);
RSDE_EXPORT RsdeStatus rsde_solve(RsdeProblem problem, double tol, size_t n0, RsdeSolution* out);
RSDE_EXPORT RsdeStatus rsde_solution_destroy(RsdeSolution solution);
RSDE_EXPORT RsdeStatus rsde_solution_paths(RsdeSolution solution, RsdePath* x, RsdePath* k);
/* replicate < 0 omits the replicate column. */
RSDE_EXPORT RsdeStatus rsde_solution_to_csv(RsdeSolution solution, int64_t replicate, int header, char** out);
RSDE_EXPORT RsdeStatus rsde_solution_a_priori_check(RsdeSolution solution, RsdeProblem problem, char** csv,
                                                    int* all_pass);

/* CSV `n,gap,seconds` for the dyadic refinement ladder. */
RSDE_EXPORT RsdeStatus rsde_convergence_csv(RsdeProblem problem, size_t n0, size_t levels, char** out);

typedef struct RsdeCampaignOptions {
  size_t cases;
  uint64_t seed;
  double relative_slack;
  int corrupt_solver;
} RsdeCampaignOptions;

RSDE_EXPORT RsdeStatus rsde_verify_campaign(const RsdeCampaignOptions* options, char** csv, size_t* violations);

#ifdef __cplusplus
}
#endif

#endif /* RSDE_H */
