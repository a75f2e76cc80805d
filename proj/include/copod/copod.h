/*
 * copod - copula-based outlier detection.
 *
 * C interface to the detector core. Every object is an opaque handle owned by
 * the library and released with the matching *_free function. Calls that can
 * fail return a copod_status; on failure the out-parameters are untouched and
 * copod_last_error() describes what went wrong (per thread, valid until the
 * next failing call on that thread).
 */

#ifndef COPOD_COPOD_H
#define COPOD_COPOD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define COPOD_API __declspec(dllexport)
#else
#  define COPOD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct copod_dataset copod_dataset;
typedef struct copod_model copod_model;
typedef struct copod_bench_result copod_bench_result;
typedef struct copod_timing_result copod_timing_result;

typedef enum copod_status {
  COPOD_OK = 0,
  COPOD_ERROR_IO = 1,
  COPOD_ERROR_PARSE = 2,
  COPOD_ERROR_DEGENERATE_DATA = 3,
  COPOD_ERROR_DIMENSION_MISMATCH = 4,
  COPOD_ERROR_INVALID_ARGUMENT = 5,
  COPOD_ERROR_FORMAT_VERSION = 6,
  COPOD_ERROR_INTERNAL = 7
} copod_status;

typedef enum copod_variant {
  COPOD_VARIANT_LEFT = 0,
  COPOD_VARIANT_RIGHT = 1,
  COPOD_VARIANT_TWO_TAILS = 2,
  COPOD_VARIANT_SKEW_CORRECTED = 3,
  COPOD_VARIANT_MAX = 4
} copod_variant;

COPOD_API const char* copod_version(void);

/* Message for the most recent failing call on this thread; never NULL. */
COPOD_API const char* copod_last_error(void);

/* Formats a double with 17 significant digits (round-trip exact), the same
 * rule used by every file the library writes. Returns COPOD_OK or
 * COPOD_ERROR_INVALID_ARGUMENT when the buffer is too small. */
COPOD_API copod_status copod_format_double(double value, char* buf, size_t buf_len);

/* ------------------------------------------------------------------ */
/* Datasets                                                            */

/* Loads a comma-separated file with a header row. label_column may be NULL
 * (no labels) or name a header column holding only 0/1. */
COPOD_API copod_status copod_dataset_load_csv(const char* path, const char* label_column,
                                              copod_dataset** out);

/* Loads an ARFF file whose single nominal attribute is the label.
 * outlier_value/inlier_value override the default 'yes'/'no' vocabulary;
 * pass NULL for both to keep the default. */
COPOD_API copod_status copod_dataset_load_arff(const char* path, const char* outlier_value,
                                               const char* inlier_value, copod_dataset** out);

/* Writes header + rows at 17 significant digits; appends a "label" column
 * when labels are present. */
COPOD_API copod_status copod_dataset_write_csv(const copod_dataset* ds, const char* path);

/* Seeded random partition; train gets round-half-up(train_fraction * n) rows. */
COPOD_API copod_status copod_dataset_split(const copod_dataset* ds, double train_fraction,
                                           uint64_t seed, copod_dataset** train,
                                           copod_dataset** test);

COPOD_API size_t copod_dataset_rows(const copod_dataset* ds);
COPOD_API size_t copod_dataset_cols(const copod_dataset* ds);
COPOD_API int copod_dataset_has_labels(const copod_dataset* ds);

/* Copies row i (cols doubles) into buf. */
COPOD_API copod_status copod_dataset_row(const copod_dataset* ds, size_t i, double* buf,
                                         size_t buf_len);

/* Copies all labels (rows entries) into buf. */
COPOD_API copod_status copod_dataset_labels(const copod_dataset* ds, int32_t* buf,
                                            size_t buf_len);

/* Borrowed pointer, valid for the dataset's lifetime. NULL when j >= cols. */
COPOD_API const char* copod_dataset_column_name(const copod_dataset* ds, size_t j);

COPOD_API void copod_dataset_free(copod_dataset* ds);

/* Generators (deterministic for a fixed seed). upper_right != 0 mirrors the
 * toy layout so the outlier cloud sits in the top-right corner. */
COPOD_API copod_status copod_gen_toy(size_t n_inliers, size_t n_outliers, int upper_right,
                                     uint64_t seed, copod_dataset** out);
COPOD_API copod_status copod_gen_random(size_t n, size_t d, uint64_t seed, copod_dataset** out);

/* ------------------------------------------------------------------ */
/* Models                                                              */

COPOD_API copod_status copod_fit(const copod_dataset* train, copod_model** out);
COPOD_API copod_status copod_model_save(const copod_model* model, const char* path);
COPOD_API copod_status copod_model_load(const char* path, copod_model** out);
COPOD_API size_t copod_model_dims(const copod_model* model);
COPOD_API size_t copod_model_train_rows(const copod_model* model);
COPOD_API const char* copod_model_column_name(const copod_model* model, size_t j);

/* Copies the per-dimension skewness coefficients (dims entries) into buf. */
COPOD_API copod_status copod_model_skew(const copod_model* model, double* buf, size_t buf_len);

COPOD_API void copod_model_free(copod_model* model);

/* Scores every row of points. Each output array must hold rows(points)
 * doubles, or be NULL to skip that output. n_threads 0/1 runs serial; the
 * result does not depend on the thread count. */
COPOD_API copod_status copod_score(const copod_model* model, const copod_dataset* points,
                                   copod_variant variant, size_t n_threads, double* scores,
                                   double* p_left, double* p_right, double* p_skew);

/* Scores one point of model dims() coordinates. */
COPOD_API copod_status copod_score_row(const copod_model* model, const double* x, size_t d,
                                       copod_variant variant, double* score, double* p_left,
                                       double* p_right, double* p_skew);

/* Per-dimension outlier scores of x plus percentile bands over train_source.
 * Each output array must hold dims() doubles; any may be NULL. */
COPOD_API copod_status copod_explain(const copod_model* model, const double* x, size_t d,
                                     const copod_dataset* train_source, double contamination,
                                     double* per_dim, double* band_99,
                                     double* band_contamination);

/* ------------------------------------------------------------------ */
/* Metrics                                                             */

COPOD_API copod_status copod_roc_auc(const double* scores, const int32_t* labels, size_t m,
                                     double* out);
COPOD_API copod_status copod_average_precision(const double* scores, const int32_t* labels,
                                               size_t m, double* out);

/* ------------------------------------------------------------------ */
/* Benchmark harness                                                   */

typedef struct copod_bench_config {
  uint32_t trials;          /* 0 means the default of 10 */
  double train_fraction;    /* <= 0 means the default of 0.6 */
  uint64_t base_seed;
  const copod_variant* variants; /* NULL means all five */
  size_t n_variants;
  size_t n_threads;         /* 0/1 serial */
} copod_bench_config;

COPOD_API copod_status copod_bench_run(const copod_dataset* const* datasets,
                                       const char* const* names, size_t count,
                                       const copod_bench_config* config,
                                       copod_bench_result** out);

COPOD_API size_t copod_bench_row_count(const copod_bench_result* result);
COPOD_API const char* copod_bench_row_dataset(const copod_bench_result* result, size_t i);
COPOD_API copod_status copod_bench_row_variant(const copod_bench_result* result, size_t i,
                                               copod_variant* out);
COPOD_API copod_status copod_bench_row_stats(const copod_bench_result* result, size_t i,
                                             double* mean_roc_auc, double* mean_ap,
                                             size_t* invalid_trials, double* mean_seconds);

COPOD_API copod_status copod_bench_write_trials_csv(const copod_bench_result* result,
                                                    const char* path);
COPOD_API copod_status copod_bench_write_aggregate_csv(const copod_bench_result* result,
                                                       const char* path);
COPOD_API void copod_bench_result_free(copod_bench_result* result);

/* Wall time of single-threaded fit + in-sample scoring per (n, d) cell. */
COPOD_API copod_status copod_time_scaling(const size_t* ns, const size_t* ds, size_t n_cells,
                                          uint64_t seed, uint32_t repeats,
                                          copod_timing_result** out);
COPOD_API size_t copod_timing_cell_count(const copod_timing_result* result);
COPOD_API copod_status copod_timing_cell(const copod_timing_result* result, size_t i, size_t* n,
                                         size_t* d, double* mean_seconds, double* cv);
COPOD_API copod_status copod_timing_write_csv(const copod_timing_result* result,
                                              const char* path);
COPOD_API void copod_timing_result_free(copod_timing_result* result);

#ifdef __cplusplus
}
#endif

#endif /* COPOD_COPOD_H */
