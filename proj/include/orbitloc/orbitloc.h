/* SPDX-License-Identifier: Apache-2.0 */
#ifndef ORBITLOC_H
#define ORBITLOC_H

#include <stddef.h>
#include <stdint.h>

#if defined(ORBITLOC_BUILDING_LIBRARY)
#define OL_API __attribute__((visibility("default")))
#else
#define OL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ol_status {
    OL_OK = 0,
    OL_ERR_INVALID_ARGUMENT = 1,
    OL_ERR_UNSUPPORTED = 2,
    OL_ERR_NOT_REGULAR = 3,
    OL_ERR_INDETERMINATE = 4,
    OL_ERR_DEGENERATE = 5,
    OL_ERR_OFF_ORBIT = 6,
    OL_ERR_CALIBRATION = 7,
    OL_ERR_INTERNAL = 8
} ol_status;

typedef struct ol_algebra ol_algebra;
typedef struct ol_orbit ol_orbit;
typedef struct ol_grid ol_grid;
typedef struct ol_report ol_report;

/* Library version, "major.minor.patch". */
OL_API const char* ol_version(void);
/* Message of the last failed call on this thread; empty when none. */
OL_API const char* ol_last_error(void);
OL_API const char* ol_status_name(ol_status status);
/* Worker cap from ORBIT_LOCALIZE_THREADS, else the hardware concurrency. */
OL_API unsigned ol_thread_cap(void);

/* family: "su" or "sl" (also "sl_real"). */
OL_API ol_status ol_algebra_create(const char* family, int n, ol_algebra** out);
OL_API void ol_algebra_destroy(ol_algebra* algebra);
OL_API int ol_algebra_dimension(const ol_algebra* algebra);
OL_API int ol_algebra_rank(const ol_algebra* algebra);
OL_API int ol_algebra_matrix_size(const ol_algebra* algebra);
/* rank * dimension values, row k = real coordinates of the k-th standard Cartan basis element. */
OL_API ol_status ol_algebra_cartan_basis(const ol_algebra* algebra, double* out);

/* lambda: rank real coordinates on the standard Cartan basis (the imaginary part of lambda).
   mode: "compact", "maximally_split" or "user_supplied". user_labels/user_values may be NULL
   unless mode is user_supplied. */
OL_API ol_status ol_orbit_create(const ol_algebra* algebra, const double* lambda, size_t lambda_len, const char* mode,
                                 int s0, const char* const* user_labels, const double* user_values, size_t user_len,
                                 ol_orbit** out);
OL_API void ol_orbit_destroy(ol_orbit* orbit);
OL_API size_t ol_orbit_fixed_point_count(const ol_orbit* orbit);
/* Weyl label and multiplicity of fixed point `index`. The label stays valid for the orbit's lifetime. */
OL_API ol_status ol_orbit_fixed_point(const ol_orbit* orbit, size_t index, const char** label, int* multiplicity);
/* B*(lambda, lambda). */
OL_API ol_status ol_orbit_p2(const ol_orbit* orbit, double* re, double* im);

typedef struct ol_value {
    double re;
    double im;
    int degenerate;    /* within the wall tolerance, re/im are NaN */
    int support_empty; /* X not conjugate into the Cartan carrying the support */
} ol_value;

typedef struct ol_term {
    const char* label;
    double exponent_re, exponent_im;
    double denominator_re, denominator_im;
    int multiplicity;
    double value_re, value_im;
} ol_term;

/* x: dimension real coordinates of X in g_R. Wall points come back flagged, not as errors. */
OL_API ol_status ol_evaluate(const ol_orbit* orbit, const double* x, ol_value* out);

/* count points, each dimension coordinates, evaluated concurrently; rows keep input order. */
OL_API ol_status ol_grid_evaluate(const ol_orbit* orbit, const double* xs, size_t count, ol_grid** out);
OL_API void ol_grid_destroy(ol_grid* grid);
OL_API size_t ol_grid_size(const ol_grid* grid);
OL_API ol_status ol_grid_value(const ol_grid* grid, size_t row, ol_value* out);
/* Reason a row could not be evaluated; empty when it was. */
OL_API const char* ol_grid_row_error(const ol_grid* grid, size_t row);
OL_API size_t ol_grid_term_count(const ol_grid* grid, size_t row);
OL_API ol_status ol_grid_term(const ol_grid* grid, size_t row, size_t term, ol_term* out);

typedef struct ol_mc_estimate {
    double re, im;
    double std_error;
    uint64_t samples;
    uint64_t seed;
} ol_mc_estimate;

typedef struct ol_calibration {
    double c;
    double c_stderr;
    double reference_re, reference_im;
    ol_mc_estimate raw;
} ol_calibration;

typedef struct ol_sign_calibration {
    int s0;
    double extrapolated;
    double formula_value;
} ol_sign_calibration;

/* Compact forms: c times the Haar average of exp<X, zeta> over n orbit samples. */
OL_API ol_status ol_mc_integral(const ol_orbit* orbit, const double* x, uint64_t seed, uint64_t n, double c,
                                ol_mc_estimate* out);
OL_API ol_status ol_calibrate_constant(const ol_orbit* orbit, const double* x0, uint64_t seed, uint64_t n,
                                       ol_calibration* out);
/* sl(2,R) split orbit: damped integral for each eps (strictly decreasing), written to out[0..eps_len). */
OL_API ol_status ol_damped_integral(const ol_orbit* orbit, const double* x, const double* eps, size_t eps_len,
                                    double refine, double* out);
OL_API ol_status ol_calibrate_sign(const ol_orbit* orbit, const double* x, const double* eps, size_t eps_len,
                                   double refine, ol_sign_calibration* out);

typedef struct ol_verify_options {
    const char* family;
    int n;
    const double* lambda; /* NULL for the default orbit */
    size_t lambda_len;
    int s0;
    uint64_t seed;
    uint64_t samples;
    int points;
    const double* eps; /* NULL for the default schedule */
    size_t eps_len;
    const double* twist; /* NULL, or 8 values: re then im of a 2x2 row-major matrix of determinant 1 */
} ol_verify_options;

typedef struct ol_check {
    const char* name;
    double measured;
    double threshold;
    int passed;
    const char* detail;
} ol_check;

/* Fills defaults: su(2), s0 = -1, seed 1, 200000 samples, 20 points. */
OL_API void ol_verify_options_init(ol_verify_options* options);
/* suite: algebra, fixedpoints, localize, geometry, oracle or all. */
OL_API ol_status ol_verify(const char* suite, const ol_verify_options* options, ol_report** out);
OL_API void ol_report_destroy(ol_report* report);
OL_API size_t ol_report_size(const ol_report* report);
OL_API int ol_report_passed(const ol_report* report);
/* Strings stay valid for the report's lifetime. */
OL_API ol_status ol_report_check(const ol_report* report, size_t index, ol_check* out);

typedef struct ol_scaling_row {
    double s;
    double conormal_distance;
    double imaginary_defect;
} ol_scaling_row;

typedef struct ol_scaling_summary {
    double identity_residual;
    double slope_distance;  /* NaN when the defects vanish identically */
    double slope_imaginary;
    int monotone;
} ol_scaling_summary;

/* sl(2) cycle scaling limit for lambda = diag(i l, -i l) with the given twist (NULL: identity).
   rows must hold s_len entries. */
OL_API ol_status ol_cycle_limit(const double* twist, double l, const double* s, size_t s_len, size_t samples,
                                uint64_t seed, ol_scaling_row* rows, ol_scaling_summary* summary);

#ifdef __cplusplus
}
#endif

#endif
