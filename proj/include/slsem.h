/* slsem: semi-Lagrangian spectral element method for 1D linear advection.
 *
 * C API over the analysis/solver core. All handles are opaque; every function
 * that can fail returns a status code and leaves a human-readable message
 * retrievable through slsem_last_error() (thread-local).
 */
#ifndef SLSEM_H
#define SLSEM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SLSEM_API __declspec(dllexport)
#else
#define SLSEM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slsem_status {
    SLSEM_OK = 0,
    SLSEM_ERR_INVALID_ARGUMENT = 1,
    SLSEM_ERR_SINGULAR_MATRIX = 2,
    SLSEM_ERR_NO_CONVERGENCE = 3,
    SLSEM_ERR_INCONSISTENT_SYMBOL = 4,
    SLSEM_ERR_DEGENERATE_DEPENDENCE = 5,
    SLSEM_ERR_BRACKET_INVALID = 6,
    SLSEM_ERR_BRANCH_FAILURE = 7,
    SLSEM_ERR_DIVERGENCE = 8,
    SLSEM_ERR_INTERNAL = 9
} slsem_status;

typedef enum slsem_nodes_kind {
    SLSEM_NODES_CHEBYSHEV = 0,
    SLSEM_NODES_UNIFORM = 1,
    SLSEM_NODES_ALPHA = 2 /* symmetric pair {-alpha, +alpha}; degree 1 only */
} slsem_nodes_kind;

typedef enum slsem_cfl_ref {
    SLSEM_CFL_MIN_SPACING = 0, /* dt = cfl * d_min * dx / a */
    SLSEM_CFL_ELEMENT = 1      /* dt = cfl * dx / a */
} slsem_cfl_ref;

typedef enum slsem_bc {
    SLSEM_BC_PERIODIC = 0,
    SLSEM_BC_ZERO_NEIGHBOR = 1
} slsem_bc;

typedef enum slsem_dispersion_mode {
    SLSEM_DISPERSION_EXACT_SYMBOL = 0,
    SLSEM_DISPERSION_ME_TRUNCATED = 1
} slsem_dispersion_mode;

typedef enum slsem_matrix_which {
    SLSEM_MATRIX_PREV = 0,
    SLSEM_MATRIX_SELF = 1,
    SLSEM_MATRIX_NEXT = 2,
    SLSEM_MATRIX_PERIODIC = 3
} slsem_matrix_which;

/* Scheme configuration. omega_is_upwind != 0 resolves omega to 1/nu. */
typedef struct slsem_config {
    int degree;                  /* P >= 0 */
    slsem_nodes_kind nodes;
    double alpha;                /* used by SLSEM_NODES_ALPHA */
    double wave_speed;           /* a > 0 */
    double element_width;        /* dx > 0 */
    double cfl;                  /* > 0 */
    slsem_cfl_ref cfl_ref;
    int omega_is_upwind;
    double omega;
} slsem_config;

/* Message for the most recent failing call on this thread. */
SLSEM_API const char* slsem_last_error(void);
SLSEM_API const char* slsem_status_name(slsem_status status);
SLSEM_API const char* slsem_version(void);

/* ---- scheme: node set + discretization + assembled one-step operators ---- */

typedef struct slsem_scheme slsem_scheme;

SLSEM_API slsem_status slsem_scheme_create(const slsem_config* config, slsem_scheme** out);
SLSEM_API void slsem_scheme_destroy(slsem_scheme* scheme);

SLSEM_API int slsem_scheme_degree(const slsem_scheme* scheme);
SLSEM_API double slsem_scheme_nu(const slsem_scheme* scheme);
SLSEM_API double slsem_scheme_dt(const slsem_scheme* scheme);
SLSEM_API double slsem_scheme_d_min(const slsem_scheme* scheme);
SLSEM_API double slsem_scheme_resolved_omega(const slsem_scheme* scheme);
SLSEM_API double slsem_scheme_cond_vstar(const slsem_scheme* scheme);

/* nodes: P+1 reference coordinates in (-1/2, 1/2). */
SLSEM_API slsem_status slsem_scheme_nodes(const slsem_scheme* scheme, double* out);
/* out: (P+1)^2 entries, row-major. */
SLSEM_API slsem_status slsem_scheme_matrix(const slsem_scheme* scheme,
                                           slsem_matrix_which which, double* out);
/* Eigenvalues (P+1, sorted by descending magnitude) of the periodic or
 * zero-neighbor recursion matrix. */
SLSEM_API slsem_status slsem_scheme_eigenvalues(const slsem_scheme* scheme, slsem_bc bc,
                                                double* re, double* im);

/* Center-node stencil: offsets in units of dx and weights. Query the size
 * first; entries below 1e-14 in magnitude are dropped. */
SLSEM_API int slsem_scheme_stencil_size(const slsem_scheme* scheme);
SLSEM_API slsem_status slsem_scheme_stencil(const slsem_scheme* scheme, double* deltas,
                                            double* weights);

/* One-step symbol g(theta) of the center stencil. */
SLSEM_API slsem_status slsem_scheme_symbol(const slsem_scheme* scheme, double theta,
                                           double* re, double* im);
/* max |g| over the principal band theta in (0, pi]. */
SLSEM_API slsem_status slsem_scheme_max_abs_symbol(const slsem_scheme* scheme, double* out);

/* ---- analyses ---- */

/* Modified-equation coefficients m = 1..terms: a[m] multiplies d^m Q/dx^m,
 * b[m] are the dimensionless log-symbol coefficients. Arrays hold terms+1
 * entries; index 0 is unused and set to 0. */
SLSEM_API slsem_status slsem_mea(const slsem_scheme* scheme, int terms, double* a, double* b);

/* The omega with zero leading diffusion coefficient (degree >= 1). */
SLSEM_API slsem_status slsem_zero_diffusion_omega(int degree, slsem_nodes_kind nodes,
                                                  double alpha, double cfl,
                                                  slsem_cfl_ref cfl_ref, double* out);

/* Largest stable Courant number by bisection; the bracket must be stable at
 * lo and unstable at hi under max|g| <= 1 + 1e-10. */
SLSEM_API slsem_status slsem_vn_stability_limit(int degree, slsem_nodes_kind nodes,
                                                double alpha, int omega_is_upwind,
                                                double omega, slsem_cfl_ref cfl_ref,
                                                double bracket_lo, double bracket_hi,
                                                double* out);

/* Effective wavenumber kstar*dx at each theta. re compares against theta;
 * im < 0 means damping. terms is used by the ME-truncated mode. */
SLSEM_API slsem_status slsem_dispersion(const slsem_scheme* scheme, const double* thetas,
                                        int count, slsem_dispersion_mode mode, int terms,
                                        double* re_out, double* im_out);

/* Eigenvalues of the periodic/zero-neighbor matrix over an increasing cfl
 * grid. re_out/im_out hold count*(P+1) entries, sweep-major. merge_point
 * receives the first cfl with a complex pair (|Im| > 1e-8*(1+|lambda|));
 * *has_merge is 0 when no pair appears. */
SLSEM_API slsem_status slsem_spectrum_sweep(int degree, slsem_nodes_kind nodes, double alpha,
                                            int omega_is_upwind, double omega,
                                            slsem_cfl_ref cfl_ref, slsem_bc bc,
                                            const double* cfls, int count, double* re_out,
                                            double* im_out, double* merge_point,
                                            int* has_merge);

/* max over theta_e of the spectral radius of
 * N_prev e^{-i theta_e} + N_self + N_next e^{+i theta_e}. */
SLSEM_API slsem_status slsem_block_symbol_radius(const slsem_scheme* scheme,
                                                 const double* thetas, int count,
                                                 double* out);

/* ---- simulation ---- */

typedef struct slsem_sim slsem_sim;

typedef struct slsem_run_report {
    double dt;
    double nu;
    double resolved_omega;
    double d_min;
    double cond_vstar;
    int64_t steps;
    double l2_error;
    double nodal_rms_error;
    double mass;
    double initial_norm;
    double final_norm;
    int diverged;
} slsem_run_report;

/* element_width in the config is ignored by simulations: dx = 1/elements. */
SLSEM_API slsem_status slsem_sim_create(const slsem_config* config, int elements,
                                        slsem_sim** out);
SLSEM_API void slsem_sim_destroy(slsem_sim* sim);

/* Advances the sine initial condition q(x,0) = sin(2 pi x) to t_end and fills
 * the report. Divergence aborts the stepping, sets report->diverged and keeps
 * the partial history. */
SLSEM_API slsem_status slsem_sim_run(slsem_sim* sim, double t_end, slsem_run_report* report);

/* Global nodal solution after the run: count = elements*(P+1) coordinates,
 * values, and exact values sin(2 pi (x - a t)). */
SLSEM_API int slsem_sim_node_count(const slsem_sim* sim);
SLSEM_API slsem_status slsem_sim_solution(const slsem_sim* sim, double* x, double* q,
                                          double* q_exact);

/* Norm history recorded at every step, including t = 0. */
SLSEM_API int slsem_sim_history_size(const slsem_sim* sim);
SLSEM_API slsem_status slsem_sim_history(const slsem_sim* sim, double* t, double* norm);

/* Runs the same configuration over several mesh sizes; errs/nodal_rms hold
 * count entries; order receives the least-squares slope of log error against
 * log(1/K). */
SLSEM_API slsem_status slsem_convergence_study(const slsem_config* config,
                                               const int* element_counts, int count,
                                               double t_end, double* errs,
                                               double* nodal_rms, double* order);

#ifdef __cplusplus
}
#endif

#endif /* SLSEM_H */
