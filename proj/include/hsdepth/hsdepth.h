/* C interface for exact bivariate halfspace-depth trimmed regions, their
 * reference-distribution counterparts and the deviation/limit-theorem
 * experiment harness.
 *
 * All functions return a status code; outputs go through pointers.  On any
 * failure the affected outputs are untouched and hsd_last_error() carries a
 * message (thread-local, valid until the next call on the same thread).
 * Strings returned through char** are heap-allocated; release them with
 * hsd_string_free.  Handles are released with the matching *_free, which
 * accept NULL.
 */
#ifndef HSDEPTH_H
#define HSDEPTH_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  HSD_OK = 0,
  HSD_ERR_INVALID = 1,  /* bad argument, domain violation, parse failure */
  HSD_ERR_EMPTY = 2,    /* operation undefined on an empty region */
  HSD_ERR_RUNTIME = 3,  /* I/O or other runtime failure */
  HSD_ERR_INTERNAL = 4
} hsd_status;

typedef struct hsd_dist hsd_dist;       /* reference distribution */
typedef struct hsd_region hsd_region;   /* convex region (possibly empty) */
typedef struct hsd_sample hsd_sample;   /* weighted point sample */
typedef struct hsd_records hsd_records; /* experiment trajectory records */

const char* hsd_last_error(void);
void hsd_string_free(char* s);

/* Worker cap for experiment replications; 0 restores the hardware default. */
void hsd_set_max_threads(int k);

/* ---- reference distributions ----
 * tags: disk, square, gauss, cauchy, uniform1d, normal1d.  The 1-D families
 * live on the x-axis of the plane.
 */
hsd_status hsd_dist_create(const char* tag, hsd_dist** out);
void hsd_dist_free(hsd_dist* d);

hsd_status hsd_dist_depth(const hsd_dist* d, double x, double y, double* out);
/* mass of the halfplane {z : <z,(ux,uy)> <= t}; (ux,uy) need not be unit */
hsd_status hsd_dist_halfspace_mass(const hsd_dist* d, double ux, double uy,
                                   double t, double* out);
hsd_status hsd_dist_region(const hsd_dist* d, double alpha, int resolution,
                           hsd_region** out);
/* projected density of <X,(ux,uy)> at <x,(ux,uy)> for unit (ux,uy) */
hsd_status hsd_dist_radon(const hsd_dist* d, double x, double y, double ux,
                          double uy, double* out);
hsd_status hsd_dist_min_boundary_radon(const hsd_dist* d, double alpha,
                                       double* out);
/* sup_{B(x,r)} depth - depth(x) (sign=+1) or inf (sign=-1), 64x64 polar grid */
hsd_status hsd_varpi(const hsd_dist* d, double x, double y, double r, int sign,
                     double* out);
/* hausdorff(region(alpha+t), region(alpha)) / |t| */
hsd_status hsd_hausdorff_rate(const hsd_dist* d, double alpha, double t,
                              int resolution, double* out);
/* limsup constant sqrt(M*alpha - alpha^2) / min boundary projected density.
 * lo == hi except for the heavy-tailed family, which only has a bracket. */
hsd_status hsd_lil_constant(const hsd_dist* d, double alpha, double M,
                            double* lo, double* hi, double* min_radon);

/* ---- regions ---- */
void hsd_region_free(hsd_region* r);
hsd_status hsd_region_size(const hsd_region* r, int* out);
hsd_status hsd_region_vertex(const hsd_region* r, int i, double* x, double* y);
hsd_status hsd_region_contains(const hsd_region* r, double x, double y,
                               double tol, int* out);
hsd_status hsd_region_hausdorff(const hsd_region* a, const hsd_region* b,
                                double* out);
hsd_status hsd_region_to_json(const hsd_region* r, char** out);
hsd_status hsd_region_from_json(const char* text, hsd_region** out);

/* ---- weighted samples ---- */
/* ws may be NULL for unit weights */
hsd_status hsd_sample_create(const double* xs, const double* ys,
                             const double* ws, int n, hsd_sample** out);
void hsd_sample_free(hsd_sample* s);
hsd_status hsd_sample_size(const hsd_sample* s, int* out);
/* n model draws with weights from a law (const1|exp1|pois1|bern02), streams
 * keyed by (seed, rep); matches the experiment harness protocol */
hsd_status hsd_sample_draw(const hsd_dist* d, const char* weight_law, int n,
                           uint64_t seed, uint64_t rep, hsd_sample** out);
hsd_status hsd_sample_from_csv(const char* text, hsd_sample** out);
hsd_status hsd_sample_to_csv(const hsd_sample* s, char** out);

/* ---- empirical objects ---- */
hsd_status hsd_emp_depth(const hsd_sample* s, double x, double y, double* out);
/* exact region via pair directions; n <= 3000 */
hsd_status hsd_emp_region(const hsd_sample* s, double alpha, hsd_region** out);
hsd_status hsd_emp_region_grid(const hsd_sample* s, double alpha, int grid_size,
                               hsd_region** out);
/* sup over halfplanes of |empirical - model mass| with a witness halfplane */
hsd_status hsd_sup_deviation(const hsd_sample* s, const hsd_dist* d,
                             int extra_dirs, double* value, double* ux,
                             double* uy, double* t);

/* ---- experiments ----
 * kind: slln | mz | inclusion | lil.  config: "key = value" lines; keys
 * distribution, alpha, weights, n_min, n_max, n_ratio, replications, seed,
 * gamma_mults, p, mode, grid_size.
 */
hsd_status hsd_experiment_run(const char* kind, const char* config,
                              hsd_records** out);
void hsd_records_free(hsd_records* r);
hsd_status hsd_records_count(const hsd_records* r, int* out);
hsd_status hsd_records_to_csv(const hsd_records* r, char** out);
hsd_status hsd_records_to_json(const hsd_records* r, char** out);
/* per-kind summary (medians by n, inclusion failure rates, or limsup ratio) */
hsd_status hsd_records_summary_json(const hsd_records* r, char** out);
/* writes records.<format> under base/{experiment}/{dist}/{alpha}; format is
 * "csv" or "json"; *path_out (optional) receives the file path */
hsd_status hsd_records_write(const hsd_records* r, const char* base,
                             const char* format, char** path_out);

#ifdef __cplusplus
}
#endif

#endif /* HSDEPTH_H */
