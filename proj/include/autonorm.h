/*
 * autonorm - automatic normality transformation of feature matrices.
 *
 * Each feature (row) of a numeric matrix is pushed toward a Gaussian shape
 * by searching a shifted-logarithm family over a grid of curvature
 * parameters, standardizing robustly, winsorising extreme values at an
 * extreme-value threshold, and keeping the parameter that minimizes the
 * Anderson-Darling distance to the standard normal.
 *
 * All functions return an_status; AN_OK means success. On failure,
 * an_last_error() describes the problem for the calling thread. Objects
 * are opaque handles owned by the caller and released with the matching
 * *_destroy function. Unless stated otherwise, pointers returned by
 * accessors borrow from their handle and stay valid until it is destroyed.
 */

#ifndef AUTONORM_H
#define AUTONORM_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(AN_BUILD)
#    define AN_API __declspec(dllexport)
#  else
#    define AN_API __declspec(dllimport)
#  endif
#else
#  define AN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum an_status {
    AN_OK = 0,
    AN_ERROR_INVALID_ARGUMENT = 1, /* bad handle, bad config, bad value   */
    AN_ERROR_DOMAIN = 2,           /* argument outside mathematical domain */
    AN_ERROR_PARSE = 3,            /* malformed input text                 */
    AN_ERROR_IO = 4,               /* file system failure                  */
    AN_ERROR_INTERNAL = 5
} an_status;

typedef enum an_orientation {
    AN_FEATURES_AS_ROWS = 0,
    AN_FEATURES_AS_COLUMNS = 1
} an_orientation;

typedef enum an_na_policy {
    AN_NA_ERROR = 0, /* non-numeric cell is a parse error          */
    AN_NA_DROP = 1   /* non-numeric cell becomes a missing value   */
} an_na_policy;

typedef struct an_config an_config;
typedef struct an_matrix an_matrix;
typedef struct an_result an_result;

/* Library version as "major.minor.patch". */
AN_API const char* an_version(void);

/* Message describing the most recent failure on this thread. */
AN_API const char* an_last_error(void);

/* ---- configuration ---------------------------------------------------- */

/* A fresh config carries the defaults: the built-in 27-point symmetric
 * beta grid, winsorisation on, Gumbel percentile 0.95, automatic thread
 * count. */
AN_API an_status an_config_create(an_config** out_cfg);
AN_API void an_config_destroy(an_config* cfg);

/* Replace the beta grid. Entries must be finite and distinct and include
 * 0. count = 0 restores the default grid. */
AN_API an_status an_config_set_grid(an_config* cfg, const double* betas, size_t count);
AN_API an_status an_config_set_winsorise(an_config* cfg, int enabled);
/* Percentile of the standard Gumbel law defining the winsorisation
 * threshold; must lie strictly in (0, 1). */
AN_API an_status an_config_set_gumbel_percentile(an_config* cfg, double p);
/* Limit candidate betas to the sign of the sample skewness. Off by
 * default. */
AN_API an_status an_config_set_restrict_by_skewness(an_config* cfg, int enabled);
/* Worker threads for an_transform; 0 = hardware concurrency. */
AN_API an_status an_config_set_threads(an_config* cfg, int threads);

/* ---- matrices ---------------------------------------------------------- */

/* Build a matrix from a dense feature-major buffer: values[f * n_objects + i]
 * is object i of feature f. names may be NULL ("f0", "f1", ... are used);
 * non-finite values are treated as missing. */
AN_API an_status an_matrix_create(size_t n_features, size_t n_objects,
                                  const char* const* names, const double* values,
                                  an_matrix** out_matrix);
AN_API void an_matrix_destroy(an_matrix* m);

typedef struct an_read_options {
    char delimiter;      /* 0 = by extension: tab for .tsv, comma otherwise */
    int orientation;     /* an_orientation; how features lie in the file    */
    int has_header;      /* header row (columns) / leading name cell (rows) */
    int na_policy;       /* an_na_policy                                    */
} an_read_options;

/* Sensible defaults: auto delimiter, features as columns, header, strict
 * NA handling. */
AN_API void an_read_options_init(an_read_options* opts);

AN_API an_status an_matrix_read(const char* path, const an_read_options* opts,
                                an_matrix** out_matrix);

/* orientation -1 keeps the matrix's own layout. Values are written with
 * shortest round-trip formatting; missing values as "NA". */
AN_API an_status an_matrix_write(const an_matrix* m, const char* path, char delimiter,
                                 int orientation);

AN_API size_t an_matrix_feature_count(const an_matrix* m);
AN_API size_t an_matrix_object_count(const an_matrix* m);
AN_API const char* an_matrix_feature_name(const an_matrix* m, size_t feature);
AN_API an_status an_matrix_feature_values(const an_matrix* m, size_t feature,
                                          const double** out_values, size_t* out_count);

/* ---- transformation ----------------------------------------------------- */

typedef struct an_feature_report {
    const char* name;        /* borrowed from the result                      */
    double chosen_beta;
    double ad_before;        /* Anderson-Darling at beta = 0                  */
    double ad_after;         /* at the chosen beta; never exceeds ad_before   */
    double skewness_before;
    double skewness_after;
    double threshold;        /* winsorisation threshold L (0 if unused)       */
    long long winsorised_count;
    long long n;             /* finite values entering the statistics         */
    int degenerate;          /* constant / zero-dispersion feature            */
    int short_input;         /* n < 8: grid search skipped, beta = 0 applied  */
} an_feature_report;

/* Transform every feature of `in` and select the best beta per feature.
 * cfg may be NULL for defaults. */
AN_API an_status an_transform(const an_matrix* in, const an_config* cfg,
                              an_result** out_result);
AN_API void an_result_destroy(an_result* r);

/* Transformed matrix; borrowed from the result. */
AN_API const an_matrix* an_result_matrix(const an_result* r);
AN_API size_t an_result_feature_count(const an_result* r);
AN_API an_status an_result_report(const an_result* r, size_t feature,
                                  an_feature_report* out_report);

/* JSON document: config echo plus one record per feature. */
AN_API an_status an_result_write_report(const an_result* r, const char* path);

/* ---- diagnostics -------------------------------------------------------- */

typedef struct an_diag_options {
    const char* directory;   /* output directory (created if absent)          */
    const char* scatter_a;   /* optional feature pair for scatter plots       */
    const char* scatter_b;
    unsigned long long seed; /* QQ subsampling seed                           */
    int qq_max_points;       /* <= 0 selects the default of 1000              */
    int kde_grid_points;     /* <= 0 selects the default of 400               */
} an_diag_options;

AN_API void an_diag_options_init(an_diag_options* opts);

/* Before/after KDE and QQ SVGs for every feature (plus data sidecars), and
 * an optional before/after scatter pair. `input` must be the matrix the
 * result was computed from. */
AN_API an_status an_diagnose(const an_matrix* input, const an_result* r,
                             const an_diag_options* opts);

/* ---- scalar helpers ------------------------------------------------------ */

/* Anderson-Darling statistic of `values` against the standard normal. */
AN_API an_status an_anderson_darling(const double* values, size_t count, double* out);
/* Third standardized sample moment (1/n central moments). */
AN_API an_status an_sample_skewness(const double* values, size_t count, double* out);
/* Winsorisation threshold for n standardized values at the given Gumbel
 * percentile. */
AN_API an_status an_gumbel_threshold(size_t n, double percentile, double* out);
/* Quantile of the standard Gumbel law, -ln(-ln p). */
AN_API an_status an_gumbel_quantile(double p, double* out);
/* ln Phi(z), safe far into both tails. */
AN_API an_status an_std_normal_log_cdf(double z, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AUTONORM_H */
