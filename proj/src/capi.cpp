#include "copod/copod.h"

#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "bench.hpp"
#include "dataset.hpp"
#include "detector.hpp"
#include "errors.hpp"
#include "metrics.hpp"
#include "text.hpp"

namespace {

thread_local std::string g_last_error;

copod_status fail(copod_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Runs fn, translating the library's exception hierarchy into status codes.
template <typename Fn>
copod_status guarded(Fn&& fn) {
  try {
    fn();
    return COPOD_OK;
  } catch (const copod::FormatVersionError& e) {
    return fail(COPOD_ERROR_FORMAT_VERSION, e.what());
  } catch (const copod::ParseError& e) {
    return fail(COPOD_ERROR_PARSE, e.what());
  } catch (const copod::IoError& e) {
    return fail(COPOD_ERROR_IO, e.what());
  } catch (const copod::DegenerateDataError& e) {
    return fail(COPOD_ERROR_DEGENERATE_DATA, e.what());
  } catch (const copod::DimensionMismatchError& e) {
    return fail(COPOD_ERROR_DIMENSION_MISMATCH, e.what());
  } catch (const copod::InvalidArgumentError& e) {
    return fail(COPOD_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(COPOD_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(COPOD_ERROR_INTERNAL, "unknown error");
  }
}

copod_status require(bool ok, const char* message) {
  return ok ? COPOD_OK : fail(COPOD_ERROR_INVALID_ARGUMENT, message);
}

copod::Variant to_cpp(copod_variant v) {
  switch (v) {
    case COPOD_VARIANT_LEFT: return copod::Variant::kLeft;
    case COPOD_VARIANT_RIGHT: return copod::Variant::kRight;
    case COPOD_VARIANT_TWO_TAILS: return copod::Variant::kTwoTails;
    case COPOD_VARIANT_SKEW_CORRECTED: return copod::Variant::kSkewCorrected;
    case COPOD_VARIANT_MAX: return copod::Variant::kMax;
  }
  throw copod::InvalidArgumentError("unknown variant value " + std::to_string(int(v)));
}

copod_variant to_c(copod::Variant v) {
  switch (v) {
    case copod::Variant::kLeft: return COPOD_VARIANT_LEFT;
    case copod::Variant::kRight: return COPOD_VARIANT_RIGHT;
    case copod::Variant::kTwoTails: return COPOD_VARIANT_TWO_TAILS;
    case copod::Variant::kSkewCorrected: return COPOD_VARIANT_SKEW_CORRECTED;
    case copod::Variant::kMax: return COPOD_VARIANT_MAX;
  }
  return COPOD_VARIANT_MAX;
}

}  // namespace

struct copod_dataset {
  copod::Dataset impl;
};

struct copod_model {
  copod::CopodModel impl;
};

struct copod_bench_result {
  std::vector<copod::BenchRow> rows;
};

struct copod_timing_result {
  std::vector<copod::TimingCell> cells;
};

extern "C" {

const char* copod_version(void) { return "1.0.0"; }

const char* copod_last_error(void) { return g_last_error.c_str(); }

copod_status copod_format_double(double value, char* buf, size_t buf_len) {
  if (auto s = require(buf != nullptr, "copod_format_double: buf is NULL")) return s;
  return guarded([&] {
    const std::string text = copod::format_real17(value);
    if (text.size() + 1 > buf_len) {
      throw copod::InvalidArgumentError("copod_format_double: buffer too small");
    }
    std::memcpy(buf, text.c_str(), text.size() + 1);
  });
}

/* ---------------- datasets ---------------- */

copod_status copod_dataset_load_csv(const char* path, const char* label_column,
                                    copod_dataset** out) {
  if (auto s = require(path && out, "copod_dataset_load_csv: NULL argument")) return s;
  return guarded([&] {
    std::optional<std::string> label;
    if (label_column) label = label_column;
    *out = new copod_dataset{copod::load_csv(path, label)};
  });
}

copod_status copod_dataset_load_arff(const char* path, const char* outlier_value,
                                     const char* inlier_value, copod_dataset** out) {
  if (auto s = require(path && out, "copod_dataset_load_arff: NULL argument")) return s;
  if (auto s = require(!outlier_value == !inlier_value,
                       "copod_dataset_load_arff: provide both mapping values or neither")) {
    return s;
  }
  return guarded([&] {
    copod::ArffLabelMap map;
    if (outlier_value) {
      map.outlier_value = outlier_value;
      map.inlier_value = inlier_value;
      map.case_insensitive = false;
    }
    *out = new copod_dataset{copod::load_arff(path, map)};
  });
}

copod_status copod_dataset_write_csv(const copod_dataset* ds, const char* path) {
  if (auto s = require(ds && path, "copod_dataset_write_csv: NULL argument")) return s;
  return guarded([&] { copod::write_csv(ds->impl, path); });
}

copod_status copod_dataset_split(const copod_dataset* ds, double train_fraction, uint64_t seed,
                                 copod_dataset** train, copod_dataset** test) {
  if (auto s = require(ds && train && test, "copod_dataset_split: NULL argument")) return s;
  return guarded([&] {
    auto [tr, te] = copod::split(ds->impl, {train_fraction, seed});
    *train = new copod_dataset{std::move(tr)};
    *test = new copod_dataset{std::move(te)};
  });
}

size_t copod_dataset_rows(const copod_dataset* ds) { return ds ? ds->impl.rows() : 0; }
size_t copod_dataset_cols(const copod_dataset* ds) { return ds ? ds->impl.cols() : 0; }
int copod_dataset_has_labels(const copod_dataset* ds) {
  return ds && ds->impl.has_labels() ? 1 : 0;
}

copod_status copod_dataset_row(const copod_dataset* ds, size_t i, double* buf, size_t buf_len) {
  if (auto s = require(ds && buf, "copod_dataset_row: NULL argument")) return s;
  return guarded([&] {
    if (i >= ds->impl.rows()) {
      throw copod::InvalidArgumentError("row " + std::to_string(i) + " out of range (n=" +
                                        std::to_string(ds->impl.rows()) + ")");
    }
    if (buf_len < ds->impl.cols()) {
      throw copod::InvalidArgumentError("copod_dataset_row: buffer too small");
    }
    const auto row = ds->impl.row(i);
    std::memcpy(buf, row.data(), row.size() * sizeof(double));
  });
}

copod_status copod_dataset_labels(const copod_dataset* ds, int32_t* buf, size_t buf_len) {
  if (auto s = require(ds && buf, "copod_dataset_labels: NULL argument")) return s;
  return guarded([&] {
    if (!ds->impl.has_labels()) {
      throw copod::InvalidArgumentError("dataset has no labels");
    }
    if (buf_len < ds->impl.rows()) {
      throw copod::InvalidArgumentError("copod_dataset_labels: buffer too small");
    }
    const auto& labels = ds->impl.labels();
    std::memcpy(buf, labels.data(), labels.size() * sizeof(int32_t));
  });
}

const char* copod_dataset_column_name(const copod_dataset* ds, size_t j) {
  if (!ds || j >= ds->impl.cols()) return nullptr;
  return ds->impl.column_names()[j].c_str();
}

void copod_dataset_free(copod_dataset* ds) { delete ds; }

copod_status copod_gen_toy(size_t n_inliers, size_t n_outliers, int upper_right, uint64_t seed,
                           copod_dataset** out) {
  if (auto s = require(out != nullptr, "copod_gen_toy: out is NULL")) return s;
  return guarded([&] {
    copod::ToySpec spec;
    spec.n_inliers = n_inliers;
    spec.n_outliers = n_outliers;
    spec.orientation =
        upper_right ? copod::ToyOrientation::kUpperRight : copod::ToyOrientation::kLowerLeft;
    spec.seed = seed;
    *out = new copod_dataset{copod::gen_toy(spec)};
  });
}

copod_status copod_gen_random(size_t n, size_t d, uint64_t seed, copod_dataset** out) {
  if (auto s = require(out != nullptr, "copod_gen_random: out is NULL")) return s;
  return guarded([&] { *out = new copod_dataset{copod::gen_random(n, d, seed)}; });
}

/* ---------------- models ---------------- */

copod_status copod_fit(const copod_dataset* train, copod_model** out) {
  if (auto s = require(train && out, "copod_fit: NULL argument")) return s;
  return guarded([&] { *out = new copod_model{copod::CopodModel::fit(train->impl)}; });
}

copod_status copod_model_save(const copod_model* model, const char* path) {
  if (auto s = require(model && path, "copod_model_save: NULL argument")) return s;
  return guarded([&] { model->impl.save(path); });
}

copod_status copod_model_load(const char* path, copod_model** out) {
  if (auto s = require(path && out, "copod_model_load: NULL argument")) return s;
  return guarded([&] { *out = new copod_model{copod::CopodModel::load(path)}; });
}

size_t copod_model_dims(const copod_model* model) { return model ? model->impl.dims() : 0; }
size_t copod_model_train_rows(const copod_model* model) {
  return model ? model->impl.train_rows() : 0;
}

const char* copod_model_column_name(const copod_model* model, size_t j) {
  if (!model || j >= model->impl.dims()) return nullptr;
  return model->impl.column_names()[j].c_str();
}

copod_status copod_model_skew(const copod_model* model, double* buf, size_t buf_len) {
  if (auto s = require(model && buf, "copod_model_skew: NULL argument")) return s;
  return guarded([&] {
    if (buf_len < model->impl.dims()) {
      throw copod::InvalidArgumentError("copod_model_skew: buffer too small");
    }
    for (std::size_t j = 0; j < model->impl.dims(); ++j) {
      buf[j] = model->impl.marginal(j).skew();
    }
  });
}

void copod_model_free(copod_model* model) { delete model; }

copod_status copod_score(const copod_model* model, const copod_dataset* points,
                         copod_variant variant, size_t n_threads, double* scores, double* p_left,
                         double* p_right, double* p_skew) {
  if (auto s = require(model && points, "copod_score: NULL argument")) return s;
  return guarded([&] {
    const auto rows = model->impl.score_rows(points->impl, to_cpp(variant),
                                             n_threads == 0 ? 1 : n_threads);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (scores) scores[i] = rows[i].score;
      if (p_left) p_left[i] = rows[i].p_left;
      if (p_right) p_right[i] = rows[i].p_right;
      if (p_skew) p_skew[i] = rows[i].p_skew;
    }
  });
}

copod_status copod_score_row(const copod_model* model, const double* x, size_t d,
                             copod_variant variant, double* score, double* p_left,
                             double* p_right, double* p_skew) {
  if (auto s = require(model && x, "copod_score_row: NULL argument")) return s;
  return guarded([&] {
    const auto b = model->impl.score_one({x, d}, to_cpp(variant));
    if (score) *score = b.score;
    if (p_left) *p_left = b.p_left;
    if (p_right) *p_right = b.p_right;
    if (p_skew) *p_skew = b.p_skew;
  });
}

copod_status copod_explain(const copod_model* model, const double* x, size_t d,
                           const copod_dataset* train_source, double contamination,
                           double* per_dim, double* band_99, double* band_contamination) {
  if (auto s = require(model && x && train_source, "copod_explain: NULL argument")) return s;
  return guarded([&] {
    const auto result = model->impl.explain({x, d}, train_source->impl, contamination);
    for (std::size_t j = 0; j < result.per_dim.size(); ++j) {
      if (per_dim) per_dim[j] = result.per_dim[j];
      if (band_99) band_99[j] = result.band_99[j];
      if (band_contamination) band_contamination[j] = result.band_contamination[j];
    }
  });
}

/* ---------------- metrics ---------------- */

copod_status copod_roc_auc(const double* scores, const int32_t* labels, size_t m, double* out) {
  if (auto s = require(scores && labels && out, "copod_roc_auc: NULL argument")) return s;
  return guarded([&] { *out = copod::roc_auc({scores, m}, {labels, m}); });
}

copod_status copod_average_precision(const double* scores, const int32_t* labels, size_t m,
                                     double* out) {
  if (auto s = require(scores && labels && out, "copod_average_precision: NULL argument")) {
    return s;
  }
  return guarded([&] { *out = copod::average_precision({scores, m}, {labels, m}); });
}

/* ---------------- benchmark ---------------- */

copod_status copod_bench_run(const copod_dataset* const* datasets, const char* const* names,
                             size_t count, const copod_bench_config* config,
                             copod_bench_result** out) {
  if (auto s = require(datasets && names && out && count > 0, "copod_bench_run: NULL argument")) {
    return s;
  }
  return guarded([&] {
    copod::TrialConfig cfg;
    if (config) {
      if (config->trials > 0) cfg.trials = config->trials;
      if (config->train_fraction > 0.0) cfg.train_fraction = config->train_fraction;
      cfg.base_seed = config->base_seed;
      if (config->variants && config->n_variants > 0) {
        cfg.variants.clear();
        for (size_t i = 0; i < config->n_variants; ++i) {
          cfg.variants.push_back(to_cpp(config->variants[i]));
        }
      }
      if (config->n_threads > 1) cfg.n_threads = config->n_threads;
    }
    std::vector<std::pair<std::string, const copod::Dataset*>> entries;
    entries.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (!datasets[i] || !names[i]) {
        throw copod::InvalidArgumentError("copod_bench_run: NULL dataset or name");
      }
      entries.emplace_back(names[i], &datasets[i]->impl);
    }
    *out = new copod_bench_result{copod::run_benchmark(entries, cfg)};
  });
}

size_t copod_bench_row_count(const copod_bench_result* result) {
  return result ? result->rows.size() : 0;
}

const char* copod_bench_row_dataset(const copod_bench_result* result, size_t i) {
  if (!result || i >= result->rows.size()) return nullptr;
  return result->rows[i].dataset_name.c_str();
}

copod_status copod_bench_row_variant(const copod_bench_result* result, size_t i,
                                     copod_variant* out) {
  if (auto s = require(result && out && i < result->rows.size(),
                       "copod_bench_row_variant: bad arguments")) {
    return s;
  }
  *out = to_c(result->rows[i].variant);
  return COPOD_OK;
}

copod_status copod_bench_row_stats(const copod_bench_result* result, size_t i,
                                   double* mean_roc_auc, double* mean_ap, size_t* invalid_trials,
                                   double* mean_seconds) {
  if (auto s = require(result && i < result->rows.size(), "copod_bench_row_stats: bad arguments")) {
    return s;
  }
  const auto& row = result->rows[i];
  if (mean_roc_auc) *mean_roc_auc = row.mean_roc_auc;
  if (mean_ap) *mean_ap = row.mean_ap;
  if (invalid_trials) *invalid_trials = row.invalid_trials;
  if (mean_seconds) *mean_seconds = row.wall_time_seconds;
  return COPOD_OK;
}

copod_status copod_bench_write_trials_csv(const copod_bench_result* result, const char* path) {
  if (auto s = require(result && path, "copod_bench_write_trials_csv: NULL argument")) return s;
  return guarded([&] { copod::write_trials_csv(result->rows, path); });
}

copod_status copod_bench_write_aggregate_csv(const copod_bench_result* result, const char* path) {
  if (auto s = require(result && path, "copod_bench_write_aggregate_csv: NULL argument")) {
    return s;
  }
  return guarded([&] { copod::write_aggregate_csv(result->rows, path); });
}

void copod_bench_result_free(copod_bench_result* result) { delete result; }

copod_status copod_time_scaling(const size_t* ns, const size_t* ds, size_t n_cells, uint64_t seed,
                                uint32_t repeats, copod_timing_result** out) {
  if (auto s = require(ns && ds && out && n_cells > 0, "copod_time_scaling: NULL argument")) {
    return s;
  }
  return guarded([&] {
    std::vector<std::pair<std::size_t, std::size_t>> grid(n_cells);
    for (size_t i = 0; i < n_cells; ++i) grid[i] = {ns[i], ds[i]};
    *out = new copod_timing_result{copod::time_scaling(grid, seed, repeats == 0 ? 1 : repeats)};
  });
}

size_t copod_timing_cell_count(const copod_timing_result* result) {
  return result ? result->cells.size() : 0;
}

copod_status copod_timing_cell(const copod_timing_result* result, size_t i, size_t* n, size_t* d,
                               double* mean_seconds, double* cv) {
  if (auto s = require(result && i < result->cells.size(), "copod_timing_cell: bad arguments")) {
    return s;
  }
  const auto& cell = result->cells[i];
  if (n) *n = cell.n;
  if (d) *d = cell.d;
  if (mean_seconds) *mean_seconds = cell.mean_seconds;
  if (cv) *cv = cell.cv;
  return COPOD_OK;
}

copod_status copod_timing_write_csv(const copod_timing_result* result, const char* path) {
  if (auto s = require(result && path, "copod_timing_write_csv: NULL argument")) return s;
  return guarded([&] { copod::write_timing_csv(result->cells, path); });
}

void copod_timing_result_free(copod_timing_result* result) { delete result; }

}  // extern "C"
