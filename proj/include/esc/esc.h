/* C interface to the equal-strength cavity solver. All handles are opaque and
 * immutable after creation, so they may be shared across threads. Functions
 * return ESC_OK or an error status; esc_last_error() then holds a message
 * for the calling thread. */
#ifndef ESC_ESC_H
#define ESC_ESC_H

#include <stddef.h>

#if defined(ESC_BUILDING_LIBRARY)
#define ESC_API __attribute__((visibility("default")))
#else
#define ESC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum esc_status {
    ESC_OK = 0,
    ESC_E_INVALID_ARGUMENT = 1,
    ESC_E_NULL_LOADING = 2,
    ESC_E_DEGENERATE_LOADING = 3,
    ESC_E_DEGENERATE_GEOMETRY = 4,
    ESC_E_SINGULAR_PERIODS = 5,
    ESC_E_NON_CONVERGENCE = 6,
    ESC_E_ON_CUT = 7,
    ESC_E_NOT_ON_CUT = 8,
    ESC_E_POLE_HIT = 9,
    ESC_E_ON_CONTOUR_ZERO = 10,
    ESC_E_NON_INTEGER_COUNT = 11,
    ESC_E_ROOT_SELECTION = 12,
    ESC_E_BOUNDARY_SAMPLE_FAILURE = 13,
    ESC_E_POLE_PROXIMITY = 14,
    ESC_E_BUFFER_TOO_SMALL = 50,
    ESC_E_INTERNAL = 99
} esc_status;

typedef enum esc_family {
    ESC_N1 = 0,
    ESC_N2_FINITE = 1,
    ESC_N2_SYM_FINITE = 2,
    ESC_N2_SYM_INF = 3,
    ESC_N3_FINITE = 4,
    ESC_N_LINE = 5
} esc_family;

typedef enum esc_zero_method {
    ESC_METHOD_ARGUMENT_PRINCIPLE = 0,
    ESC_METHOD_CLOSED_FORM = 1,
    ESC_METHOD_ORACLE = 2
} esc_zero_method;

typedef enum esc_verdict {
    ESC_VERDICT_EXISTS = 0,
    ESC_VERDICT_NONEXISTENT = 1,
    ESC_VERDICT_DEGENERATE = 2,
    ESC_VERDICT_DEGENERATE_ADJACENT = 3
} esc_verdict;

/* Far-field stresses and boundary traction. */
typedef struct esc_loading {
    double sigma1_inf;
    double sigma2_inf;
    double tau_inf;
    double p;
    double tau;
} esc_loading;

typedef struct esc_loading_info {
    double sigma;
    double a_re, a_im;
    double b_re, b_im;
    double alpha_plus, alpha_minus, beta_plus, beta_minus;
    double gamma;
    int gamma_is_unit;
} esc_loading_info;

/* Fields a variant does not use are ignored. endpoints holds k_0..k_{2n-1}
 * for ESC_N_LINE; they are rescaled affinely onto [-1, 1] when needed. */
typedef struct esc_geometry {
    esc_family family;
    double k;
    double k1, k2;
    const double *endpoints;
    size_t endpoint_count;
    double zeta_inf_re, zeta_inf_im;
} esc_geometry;

/* c = c_re + i c_im scales the map, B shifts it. tol <= 0 selects ESC_TOL
 * from the environment or 1e-11. */
typedef struct esc_scale {
    double c_re, c_im;
    double B_re, B_im;
    double tol;
} esc_scale;

typedef struct esc_map esc_map;
typedef struct esc_contours esc_contours;
typedef struct esc_stress esc_stress;

typedef struct esc_contour_point {
    int cavity;
    int side; /* +1 upper bank, -1 lower bank */
    double xi;
    double s;
    double x, y;
} esc_contour_point;

typedef struct esc_contour_metrics {
    size_t points;
    double closure_gap;
    double diameter;
    double signed_area;
    double length;
    int closed;
} esc_contour_metrics;

typedef struct esc_oracle_options {
    double search_radius; /* <= 0: default */
    double min_box;       /* <= 0: 1e-8 */
} esc_oracle_options;

typedef struct esc_zero_report {
    esc_zero_method method;
    int has_count;
    int Z;
    int omega_prime_zeros;
    double raw;
    double gamma;
    esc_verdict verdict;
    size_t zero_count;
} esc_zero_report;

typedef struct esc_located_zero {
    double re, im;
    int multiplicity;
} esc_located_zero;

typedef struct esc_boundary_residual {
    double max;
    double worst_xi;
    int worst_slit;
    int near_zero_samples;
    int samples;
} esc_boundary_residual;

typedef struct esc_far_field {
    double psi_re, psi_im;
    double psi_error;
    double scale_re, scale_im;
    double scale_error;
} esc_far_field;

typedef struct esc_stress_options {
    int points_per_side;     /* <= 0: 512 */
    int max_points_per_side; /* <= 0: 262144 */
    int allow_inadmissible;
} esc_stress_options;

typedef struct esc_stress_sample {
    double s;
    double sigma1, sigma2, tau12;
    double sigma_t, sigma_n, tau_nt;
    double xi;
    int side;
} esc_stress_sample;

ESC_API const char *esc_version(void);
ESC_API const char *esc_status_name(esc_status status);
ESC_API const char *esc_last_error(void);
/* ESC_TOL when set to a positive number, 1e-11 otherwise. */
ESC_API double esc_default_tolerance(void);
ESC_API const char *esc_family_name(esc_family family);
ESC_API esc_status esc_parse_family(const char *name, esc_family *out);
ESC_API const char *esc_verdict_name(esc_verdict verdict);
ESC_API const char *esc_method_name(esc_zero_method method);

ESC_API esc_status esc_loading_derive(const esc_loading *load, esc_loading_info *out);

ESC_API esc_status esc_map_create(const esc_geometry *geometry, const esc_loading *load, const esc_scale *scale,
                                  esc_map **out);
ESC_API void esc_map_destroy(esc_map *map);

/* JSON object with loading, geometry, coefficients, residuals and slit bases.
 * Writes at most cap bytes including the terminator; *needed receives the
 * full size. A null buf is a size query and returns ESC_OK; otherwise
 * ESC_E_BUFFER_TOO_SMALL when cap < *needed. */
ESC_API esc_status esc_map_info_json(const esc_map *map, char *buf, size_t cap, size_t *needed);

ESC_API esc_status esc_map_omega_prime(const esc_map *map, double re, double im, double *out_re, double *out_im);
ESC_API esc_status esc_map_psi(const esc_map *map, double re, double im, double *out_re, double *out_im);
/* Largest identity residual recorded during construction. */
ESC_API esc_status esc_map_max_residual(const esc_map *map, double *out);

ESC_API esc_status esc_map_trace(const esc_map *map, int points_per_side, esc_contours **out);
ESC_API void esc_contours_destroy(esc_contours *set);
ESC_API size_t esc_contours_count(const esc_contours *set);
ESC_API esc_status esc_contour_metrics_get(const esc_contours *set, size_t i, esc_contour_metrics *out);
/* Two-call pattern: *n receives the point count; a null buf only queries it. */
ESC_API esc_status esc_contour_points(const esc_contours *set, size_t i, esc_contour_point *buf, size_t cap,
                                      size_t *n);
ESC_API esc_status esc_contours_intersect(const esc_contours *set, int *intersect, double *witness_xy, size_t cap,
                                          size_t *n);

/* Zeros are written to `zeros` up to cap; report->zero_count holds the total. */
ESC_API esc_status esc_map_zeros(const esc_map *map, esc_zero_method method, const esc_oracle_options *options,
                                 esc_zero_report *report, esc_located_zero *zeros, size_t cap);
/* Closed-form details for ESC_N2_SYM_INF as a JSON object (two-call). */
ESC_API esc_status esc_map_closed_form_json(const esc_map *map, char *buf, size_t cap, size_t *needed);

ESC_API esc_status esc_map_boundary_residual(const esc_map *map, int samples_per_side, esc_boundary_residual *out);
ESC_API esc_status esc_map_far_field(const esc_map *map, esc_far_field *out);
ESC_API esc_status esc_verdict_for(const esc_map *map, int has_count, int Z, int intersect, esc_verdict *out);

ESC_API esc_status esc_map_stress(const esc_map *map, int cavity, const esc_stress_options *options, esc_stress **out);
ESC_API void esc_stress_destroy(esc_stress *profile);
ESC_API size_t esc_stress_count(const esc_stress *profile);
ESC_API int esc_stress_converged(const esc_stress *profile);
ESC_API esc_status esc_stress_samples(const esc_stress *profile, esc_stress_sample *buf, size_t cap, size_t *n);

#ifdef __cplusplus
}
#endif

#endif
