/*
 * rocsbb -- nonparametric ROC surface estimation via the Bayesian bootstrap.
 *
 * C API over the C++ core. All objects are opaque handles; functions return
 * a status code (ROCSBB_OK on success) or NULL for constructors, with a
 * thread-local error message available from rocsbb_last_error().
 */
#ifndef ROCSBB_H
#define ROCSBB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; nonzero values double as CLI exit codes. */
#define ROCSBB_OK 0
#define ROCSBB_E_USAGE 2      /* invalid arguments / flag conflicts */
#define ROCSBB_E_DATA 3       /* unreadable or malformed input data */
#define ROCSBB_E_DEGENERATE 4 /* numerically degenerate input */
#define ROCSBB_E_INTERNAL 5

/* Estimation methods. */
#define ROCSBB_METHOD_BB 0
#define ROCSBB_METHOD_EMPIRICAL 1
#define ROCSBB_METHOD_KERNEL_NRD0 2
#define ROCSBB_METHOD_KERNEL_UCV 3
#define ROCSBB_METHOD_NORMAL 4

typedef struct rocsbb_sample rocsbb_sample;
typedef struct rocsbb_grid rocsbb_grid;
typedef struct rocsbb_surface rocsbb_surface;
typedef struct rocsbb_posterior rocsbb_posterior;
typedef struct rocsbb_scenario rocsbb_scenario;
typedef struct rocsbb_study rocsbb_study;

const char* rocsbb_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* rocsbb_last_error(void);

/* Status code of the most recent failure on this thread (for constructors,
 * which signal failure by returning NULL). */
int rocsbb_last_status(void);

/* ---- samples ---------------------------------------------------------- */

rocsbb_sample* rocsbb_sample_create(const double* y1, size_t n1,
                                    const double* y2, size_t n2,
                                    const double* y3, size_t n3);

/* CSV with a group-label column and a value column. label1..label3 map file
 * labels onto groups 1..3; pass NULL for the defaults "1","2","3". */
rocsbb_sample* rocsbb_sample_from_csv(const char* path,
                                      const char* group_column,
                                      const char* value_column,
                                      const char* label1, const char* label2,
                                      const char* label3);

/* Bundled Trail Making Test Part A dataset (170/52/23 observations). */
rocsbb_sample* rocsbb_sample_tmt(void);

void rocsbb_sample_free(rocsbb_sample* s);
size_t rocsbb_sample_size(const rocsbb_sample* s, int group /* 1..3 */);
int rocsbb_sample_values(const rocsbb_sample* s, int group, double* out, size_t capacity);
uint64_t rocsbb_sample_checksum(const rocsbb_sample* s);

/* ---- probability grids ------------------------------------------------ */

/* n equidistant points from 0.0001 to 0.9999 on both axes. */
rocsbb_grid* rocsbb_grid_default(size_t n_points);
rocsbb_grid* rocsbb_grid_create(const double* p1, size_t np1, const double* p3, size_t np3);
void rocsbb_grid_free(rocsbb_grid* g);
size_t rocsbb_grid_size(const rocsbb_grid* g, int axis /* 1 or 3 */);
int rocsbb_grid_points(const rocsbb_grid* g, int axis, double* out, size_t capacity);

/* ---- surfaces --------------------------------------------------------- */

size_t rocsbb_surface_rows(const rocsbb_surface* s); /* p1 axis */
size_t rocsbb_surface_cols(const rocsbb_surface* s); /* p3 axis */
double rocsbb_surface_value(const rocsbb_surface* s, size_t i, size_t j);
/* Row-major copy (p1-major); capacity must be >= rows*cols. */
int rocsbb_surface_values(const rocsbb_surface* s, double* out, size_t capacity);
int rocsbb_surface_grid_points(const rocsbb_surface* s, int axis, double* out, size_t capacity);
/* Grid-average VUS of the surface. */
int rocsbb_surface_vus(const rocsbb_surface* s, double* out);
int rocsbb_surface_emse(const rocsbb_surface* estimate, const rocsbb_surface* truth, double* out);
/* CSV round-trip: header p1,p3,rocs; p1-major rows; lossless decimals. */
int rocsbb_surface_write_csv(const rocsbb_surface* s, const char* path);
rocsbb_surface* rocsbb_surface_read_csv(const char* path);
void rocsbb_surface_free(rocsbb_surface* s);

/* ---- Bayesian bootstrap ----------------------------------------------- */

typedef struct rocsbb_bb_options {
  uint64_t seed;
  size_t replicates;       /* B; default 2000 */
  double level;            /* credible level in (0,1); default 0.95 */
  int threads;             /* <= 0: machine parallelism */
  int keep_surface_draws;  /* retain per-replicate surfaces (memory heavy) */
} rocsbb_bb_options;

rocsbb_bb_options rocsbb_bb_options_default(void);

/* Runs the full BB algorithm; surface_out receives the posterior-mean
 * surface, posterior_out the VUS draws/summary. Either out-pointer may be
 * NULL if not needed. Deterministic in (sample, grid, options.seed,
 * options.replicates) for any thread count. */
int rocsbb_bb_estimate(const rocsbb_sample* sample, const rocsbb_grid* grid,
                       const rocsbb_bb_options* options,
                       rocsbb_surface** surface_out, rocsbb_posterior** posterior_out);

double rocsbb_posterior_mean(const rocsbb_posterior* p);
double rocsbb_posterior_lower(const rocsbb_posterior* p);
double rocsbb_posterior_upper(const rocsbb_posterior* p);
size_t rocsbb_posterior_draw_count(const rocsbb_posterior* p);
int rocsbb_posterior_draws(const rocsbb_posterior* p, double* out, size_t capacity);
void rocsbb_posterior_free(rocsbb_posterior* p);

/* Pointwise BB mean and percentile band of one group's CDF on a z grid.
 * group is 1..3; mean/lower/upper must hold nz values each. */
int rocsbb_bb_cdf_band(const rocsbb_sample* sample, int group,
                       const double* z, size_t nz, size_t replicates, double level,
                       uint64_t seed, int threads,
                       double* mean_out, double* lower_out, double* upper_out);

/* ---- classical estimators --------------------------------------------- */

int rocsbb_empirical_vus(const rocsbb_sample* sample, double* out);
int rocsbb_kernel_vus(const rocsbb_sample* sample, double h1, double h2, double h3, double* out);
int rocsbb_bandwidth_nrd0(const double* values, size_t n, double* out);
/* lo/hi <= 0 selects the default search interval [nrd0/20, 5*nrd0].
 * hit_boundary_out (optional) is set when the optimum lies at an endpoint. */
int rocsbb_bandwidth_ucv(const double* values, size_t n, double lo, double hi,
                         double* h_out, int* hit_boundary_out);

/* Plug-in surface for ROCSBB_METHOD_EMPIRICAL / KERNEL_NRD0 / KERNEL_UCV /
 * NORMAL. */
rocsbb_surface* rocsbb_plug_in_surface(const rocsbb_sample* sample, int method,
                                       const rocsbb_grid* grid);

/* Frequentist percentile bootstrap CI (within-group resampling, bandwidths
 * recomputed per resample). method: EMPIRICAL / KERNEL_NRD0 / KERNEL_UCV. */
int rocsbb_bootstrap_vus_ci(const rocsbb_sample* sample, int method, size_t resamples,
                            double level, uint64_t seed, int threads,
                            double* point_out, double* lower_out, double* upper_out);

/* ---- simulation scenarios and studies --------------------------------- */

rocsbb_scenario* rocsbb_scenario_builtin(int id /* 1..4 */);

/* JSON spec: {"dist1": {...}, "dist2": {...}, "dist3": {...}} where each
 * distribution is one of
 *   {"kind":"normal","mu":..,"sigma":..}
 *   {"kind":"gamma","shape":..,"rate":..}
 *   {"kind":"student_t","df":..}
 *   {"kind":"beta","a":..,"b":..}
 *   {"kind":"chi_square","df":..}
 *   {"kind":"normal_mixture","pi":..,"mu1":..,"sigma1":..,"mu2":..,"sigma2":..}
 */
rocsbb_scenario* rocsbb_scenario_from_json(const char* json_text);
void rocsbb_scenario_free(rocsbb_scenario* sc);

rocsbb_sample* rocsbb_generate_dataset(const rocsbb_scenario* sc,
                                       size_t n1, size_t n2, size_t n3, uint64_t seed);
rocsbb_surface* rocsbb_true_surface(const rocsbb_scenario* sc, const rocsbb_grid* grid);
int rocsbb_true_vus_mc(const rocsbb_scenario* sc, uint64_t draws, uint64_t seed,
                       int threads, double* out);
/* Frozen reference constant for a builtin scenario (1e8-draw Monte Carlo). */
int rocsbb_reference_true_vus(int scenario_id, double* vus_out, double* se_out);

typedef struct rocsbb_study_options {
  size_t n1, n2, n3;
  size_t n_datasets;
  size_t bb_replicates;
  double level;
  size_t grid_points;
  uint64_t seed;
  int threads;
  /* Bitmask of (1 << ROCSBB_METHOD_*); BB must be set for coverage. */
  unsigned estimator_mask;
} rocsbb_study_options;

rocsbb_study_options rocsbb_study_options_default(void);

rocsbb_study* rocsbb_run_study(const rocsbb_scenario* sc, const rocsbb_study_options* options);
void rocsbb_study_free(rocsbb_study* st);

size_t rocsbb_study_cell_count(const rocsbb_study* st);
/* Per-cell accessors; any out-pointer may be NULL. failed_out is nonzero for
 * flagged missing cells (estimator failure on that dataset). */
int rocsbb_study_cell(const rocsbb_study* st, size_t index,
                      size_t* dataset_out, int* method_out,
                      double* emse_out, double* vus_out,
                      double* ci_lower_out, double* ci_upper_out,
                      int* covered_out, int* failed_out);
double rocsbb_study_true_vus(const rocsbb_study* st);
/* BB coverage rate; NaN when BB was not in the estimator mask. */
double rocsbb_study_coverage(const rocsbb_study* st);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ROCSBB_H */
