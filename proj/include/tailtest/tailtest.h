/* C interface to the tailtest library. */
#ifndef TAILTEST_TAILTEST_H
#define TAILTEST_TAILTEST_H

#include <stddef.h>
#include <stdint.h>

#if defined(TAILTEST_BUILDING_LIBRARY)
#define TT_API __attribute__((visibility("default")))
#else
#define TT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tt_status {
  TT_OK = 0,
  TT_ERR_INVALID_ARGUMENT = 1, /* null pointer, buffer too small */
  TT_ERR_DOMAIN = 2,
  TT_ERR_INVALID_MODEL = 3,
  TT_ERR_INPUT = 4,
  TT_ERR_PARSE = 5,
  TT_ERR_CONVERGENCE = 6,
  TT_ERR_INTERNAL = 7
} tt_status;

typedef enum tt_side { TT_SIDE_RIGHT = 0, TT_SIDE_LEFT = 1 } tt_side;

typedef enum tt_method_policy {
  TT_POLICY_AUTO = 0,
  TT_POLICY_EXACT = 1,
  TT_POLICY_ASYMPTOTIC = 2,
  TT_POLICY_MONTE_CARLO = 3
} tt_method_policy;

typedef enum tt_pvalue_method {
  TT_METHOD_GAMMA_CLOSED_FORM = 0,
  TT_METHOD_INVERSION = 1,
  TT_METHOD_ASYMPTOTIC_SERIES = 2,
  TT_METHOD_ASYMPTOTIC_INTEGRAL = 3,
  TT_METHOD_MONTE_CARLO = 4
} tt_pvalue_method;

typedef enum tt_kernel_policy { TT_KERNEL_AUTO = 0, TT_KERNEL_NEVER = 1, TT_KERNEL_ALWAYS = 2 } tt_kernel_policy;

/* Message of the last failed call on this thread ("" if none). */
TT_API const char* tt_last_error(void);
/* Line number attached to the last TT_ERR_PARSE on this thread, else 0. */
TT_API size_t tt_last_error_line(void);
TT_API const char* tt_version(void);
TT_API const char* tt_status_string(tt_status status);
TT_API const char* tt_method_name(tt_pvalue_method method);
/* Worker count after applying the TAILTEST_THREADS cap; 0 means automatic. */
TT_API unsigned tt_resolve_threads(unsigned requested);

/* ---- opaque handles ---------------------------------------------------- */

typedef struct tt_model tt_model;
typedef struct tt_sample tt_sample;

TT_API tt_status tt_model_parse(const char* spec, tt_model** out);
TT_API tt_status tt_model_from_samples(const tt_sample* const* samples, size_t k, tt_model** out);
TT_API tt_status tt_model_cdf(const tt_model* model, double x, double* out);
TT_API tt_status tt_model_describe(const tt_model* model, char* buffer, size_t capacity);
TT_API void tt_model_free(tt_model* model);

TT_API tt_status tt_sample_from_array(const double* values, size_t count, tt_sample** out);
/* column may be NULL for one value per line. */
TT_API tt_status tt_sample_read(const char* path, const char* column, tt_sample** out);
/* Draws count values from the model using stream (seed, stream). */
TT_API tt_status tt_sample_draw(const tt_model* model, size_t count, uint64_t seed, uint64_t stream,
                                tt_sample** out);
TT_API size_t tt_sample_size(const tt_sample* sample);
TT_API const double* tt_sample_data(const tt_sample* sample);
TT_API void tt_sample_free(tt_sample* sample);

/* 16 hex digits plus terminator. */
TT_API tt_status tt_file_digest(const char* path, char out[17]);

/* ---- statistic ---------------------------------------------------------- */

typedef struct tt_statistic {
  double value; /* +inf when infinite */
  int infinite;
  double a;
  size_t n;
  size_t clamped_count;
} tt_statistic;

/* clamp_epsilon <= 0 disables clamping. */
TT_API tt_status tt_compute_statistic(const tt_sample* sample, const tt_model* model, double a, tt_side side,
                                      double clamp_epsilon, tt_statistic* out);

/* ---- null distribution ----------------------------------------------- */

typedef struct tt_inversion_settings {
  double rel_tol;
  double max_truncation;
  double plain_truncation_limit;
  int quadrature_order;
  tt_kernel_policy kernel;
} tt_inversion_settings;

typedef struct tt_inversion_info {
  double value;
  double error_estimate;
  double truncation;
  double tail_bound;
  int kernel_subtracted;
  double clipped;
  uint64_t evaluations;
} tt_inversion_info;

TT_API void tt_inversion_settings_default(tt_inversion_settings* out);

/* settings may be NULL for defaults. */
TT_API tt_status tt_char_fn(double t, double a, int64_t n, double* re, double* im);
TT_API tt_status tt_cumulant(int k, double a, int64_t n, double* out);
TT_API tt_status tt_gamma_closed_form_cdf(double sigma, int64_t n, double* out);
TT_API tt_status tt_gamma_closed_form_pdf(double s, int64_t n, double* out);
TT_API tt_status tt_null_cdf(double sigma, double a, int64_t n, const tt_inversion_settings* settings,
                             tt_inversion_info* out);
TT_API tt_status tt_null_pdf(double s, double a, int64_t n, const tt_inversion_settings* settings,
                             tt_inversion_info* out);
/* Nondecreasing CDF values on an arbitrary grid; errors may be NULL. */
TT_API tt_status tt_null_cdf_grid(const double* sigmas, size_t count, double a, int64_t n,
                                  const tt_inversion_settings* settings, double* values, double* errors);

/* ---- limit law --------------------------------------------------------- */

typedef struct tt_series {
  double y;
  double leading;
  double second_order;
  double value;
  double error_indicator;
  int below_threshold;
} tt_series;

TT_API tt_status tt_limit_cdf(double sigma, double alpha, const tt_inversion_settings* settings,
                              tt_inversion_info* out);
TT_API tt_status tt_limit_pdf(double s, double alpha, const tt_inversion_settings* settings,
                              tt_inversion_info* out);
TT_API tt_status tt_limit_cdf_grid(const double* sigmas, size_t count, double alpha,
                                   const tt_inversion_settings* settings, double* values, double* errors);
TT_API tt_status tt_limit_cdf_series(double sigma, double alpha, double series_threshold, tt_series* out);
TT_API tt_status tt_second_order_term(double y, double* out);

/* ---- p-values ---------------------------------------------------------- */

typedef struct tt_mc_settings {
  uint64_t replicates;
  uint64_t seed;
  uint64_t chunk_size;
  unsigned threads;
} tt_mc_settings;

typedef struct tt_pvalue_policy {
  tt_method_policy method;
  int64_t asymptotic_min_n;
  double asymptotic_min_a;
  double series_min_alpha;
  int monte_carlo_fallback;
  tt_inversion_settings inversion;
  tt_mc_settings monte_carlo;
} tt_pvalue_policy;

typedef struct tt_pvalue {
  double p;
  tt_pvalue_method method;
  double error_estimate;
  int infinite_statistic;
  int fallback;
} tt_pvalue;

TT_API void tt_mc_settings_default(tt_mc_settings* out);
TT_API void tt_pvalue_policy_default(tt_pvalue_policy* out);

/* policy may be NULL for defaults. */
TT_API tt_status tt_p_value(double a_value, int infinite, double a, int64_t n, const tt_pvalue_policy* policy,
                            tt_pvalue* out);

/* ---- Monte Carlo oracle --------------------------------------------- */

/* buffer must hold settings->replicates values. */
TT_API tt_status tt_mc_sample_null(double a, int64_t n, const tt_mc_settings* settings, double* buffer,
                                   size_t capacity);
TT_API tt_status tt_mc_p_value(double a_value, double a, int64_t n, const tt_mc_settings* settings,
                               tt_pvalue* out);

/* ---- Kolmogorov-Smirnov baseline ------------------------------------ */

typedef struct tt_ks {
  double distance;
  double lambda;
  double p;
  uint64_t n_a;
  uint64_t n_b;
  int n_b_infinite;
  int small_sample;
} tt_ks;

TT_API tt_status tt_ks_two_sample(const tt_sample* a, const tt_sample* b, tt_ks* out);
TT_API tt_status tt_ks_one_sample(const tt_sample* sample, const tt_model* model, tt_ks* out);
TT_API tt_status tt_ks_p(double lambda, double* out);

/* ---- averaged ECDF laws ---------------------------------------------- */

TT_API tt_status tt_point_probability(double mu, double F, int64_t k, int64_t n, double* out);
TT_API tt_status tt_gaussian_point_probability(double mu, double F, int64_t k, int64_t n, double* out);
TT_API tt_status tt_gaussian_density(double mu, double F, int64_t k, int64_t n, double* out);
TT_API tt_status tt_dispersion(double F, int64_t k, int64_t n, double* out);

/* ---- power study ------------------------------------------------------ */

typedef struct tt_power_config {
  const tt_model* null_model;
  const tt_model* alternative;
  size_t n;
  const double* exponents;
  size_t exponent_count;
  const tt_side* sides;
  size_t side_count;
  size_t replicates;
  uint64_t seed;
  unsigned threads;
  double level;
  int include_ks;
  tt_pvalue_policy policy;
} tt_power_config;

typedef struct tt_power_row {
  char test[4]; /* "A" or "KS" */
  double a;
  tt_side side;
  uint64_t rejections;
  uint64_t replicates;
  double power;
  double std_error;
} tt_power_row;

/* Writes up to capacity rows; *row_count receives the number required. */
TT_API tt_status tt_power_study(const tt_power_config* config, tt_power_row* rows, size_t capacity,
                                size_t* row_count);

#ifdef __cplusplus
}
#endif

#endif /* TAILTEST_TAILTEST_H */
