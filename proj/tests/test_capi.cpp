// Exercises the shared-library C interface end to end: handles, error codes,
// and agreement with the documented contracts.

#include "copod/copod.h"

#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  return fs::temp_directory_path() / ("copod_capi_" + std::to_string(::getpid()) + "_" + name);
}

struct FileGuard {
  fs::path path;
  explicit FileGuard(fs::path p) : path(std::move(p)) {}
  ~FileGuard() { std::error_code ec; fs::remove(path, ec); }
};

}  // namespace

TEST_CASE("version and error message plumbing") {
  CHECK(std::string(copod_version()) == "1.0.0");
  copod_dataset* ds = nullptr;
  CHECK(copod_dataset_load_csv("/no/such/file.csv", nullptr, &ds) == COPOD_ERROR_IO);
  CHECK(std::string(copod_last_error()).find("/no/such/file.csv") != std::string::npos);
  CHECK(copod_dataset_load_csv(nullptr, nullptr, &ds) == COPOD_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("format_double matches the file formatting rule") {
  char buf[64];
  REQUIRE(copod_format_double(2.0 / 3.0, buf, sizeof(buf)) == COPOD_OK);
  CHECK(std::strtod(buf, nullptr) == 2.0 / 3.0);
  CHECK(copod_format_double(2.0 / 3.0, buf, 4) == COPOD_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("csv load, fit, score, save, reload") {
  const auto csv = scratch("pipeline.csv");
  FileGuard g1(csv);
  {
    std::ofstream out(csv);
    out << "a,b,label\n";
    for (int i = 0; i < 20; ++i) {
      out << i * 0.5 << ',' << 10.0 - i * 0.25 << ',' << (i == 19 ? 1 : 0) << '\n';
    }
  }

  copod_dataset* ds = nullptr;
  REQUIRE(copod_dataset_load_csv(csv.string().c_str(), "label", &ds) == COPOD_OK);
  CHECK(copod_dataset_rows(ds) == 20);
  CHECK(copod_dataset_cols(ds) == 2);
  CHECK(copod_dataset_has_labels(ds) == 1);
  CHECK(std::string(copod_dataset_column_name(ds, 0)) == "a");
  CHECK(copod_dataset_column_name(ds, 5) == nullptr);

  std::vector<int32_t> labels(20);
  REQUIRE(copod_dataset_labels(ds, labels.data(), labels.size()) == COPOD_OK);
  CHECK(labels[19] == 1);

  std::vector<double> row(2);
  REQUIRE(copod_dataset_row(ds, 3, row.data(), row.size()) == COPOD_OK);
  CHECK(row[0] == 1.5);
  CHECK(copod_dataset_row(ds, 99, row.data(), row.size()) == COPOD_ERROR_INVALID_ARGUMENT);

  copod_model* model = nullptr;
  REQUIRE(copod_fit(ds, &model) == COPOD_OK);
  CHECK(copod_model_dims(model) == 2);
  CHECK(copod_model_train_rows(model) == 20);
  CHECK(std::string(copod_model_column_name(model, 1)) == "b");

  std::vector<double> skew(2);
  REQUIRE(copod_model_skew(model, skew.data(), skew.size()) == COPOD_OK);
  CHECK(std::isfinite(skew[0]));

  std::vector<double> scores(20), pl(20), pr(20), ps(20);
  REQUIRE(copod_score(model, ds, COPOD_VARIANT_MAX, 1, scores.data(), pl.data(), pr.data(),
                      ps.data()) == COPOD_OK);
  for (int i = 0; i < 20; ++i) {
    CHECK(scores[i] >= 0.0);
    CHECK(scores[i] >= pl[i] - 1e-15);
    CHECK(scores[i] >= pr[i] - 1e-15);
  }

  // threaded scoring must agree bitwise
  std::vector<double> threaded(20);
  REQUIRE(copod_score(model, ds, COPOD_VARIANT_MAX, 4, threaded.data(), nullptr, nullptr,
                      nullptr) == COPOD_OK);
  CHECK(threaded == scores);

  double one_score = 0.0;
  REQUIRE(copod_score_row(model, row.data(), row.size(), COPOD_VARIANT_MAX, &one_score, nullptr,
                          nullptr, nullptr) == COPOD_OK);
  CHECK(one_score == scores[3]);
  CHECK(copod_score_row(model, row.data(), 1, COPOD_VARIANT_MAX, &one_score, nullptr, nullptr,
                        nullptr) == COPOD_ERROR_DIMENSION_MISMATCH);

  const auto model_path = scratch("pipeline.model.json");
  FileGuard g2(model_path);
  REQUIRE(copod_model_save(model, model_path.string().c_str()) == COPOD_OK);
  copod_model* reloaded = nullptr;
  REQUIRE(copod_model_load(model_path.string().c_str(), &reloaded) == COPOD_OK);
  std::vector<double> rescored(20);
  REQUIRE(copod_score(reloaded, ds, COPOD_VARIANT_MAX, 1, rescored.data(), nullptr, nullptr,
                      nullptr) == COPOD_OK);
  CHECK(rescored == scores);

  copod_model_free(reloaded);
  copod_model_free(model);
  copod_dataset_free(ds);
}

TEST_CASE("model load surfaces version errors") {
  const auto path = scratch("bad_version.json");
  FileGuard g(path);
  {
    std::ofstream out(path);
    out << "{\"format_version\": 999, \"n\": 3, \"d\": 1, \"column_names\": [\"a\"],"
           " \"marginals\": [{\"skew\": 0, \"sorted_samples\": [1, 2, 3]}]}";
  }
  copod_model* model = nullptr;
  CHECK(copod_model_load(path.string().c_str(), &model) == COPOD_ERROR_FORMAT_VERSION);
}

TEST_CASE("split and metrics through the C API") {
  copod_dataset* toy = nullptr;
  REQUIRE(copod_gen_toy(60, 12, 0, 5, &toy) == COPOD_OK);
  CHECK(copod_dataset_rows(toy) == 72);

  copod_dataset* train = nullptr;
  copod_dataset* test = nullptr;
  REQUIRE(copod_dataset_split(toy, 0.6, 3, &train, &test) == COPOD_OK);
  CHECK(copod_dataset_rows(train) == 43);  // round-half-up of 43.2
  CHECK(copod_dataset_rows(test) == 29);

  copod_model* model = nullptr;
  REQUIRE(copod_fit(train, &model) == COPOD_OK);
  const size_t n_test = copod_dataset_rows(test);
  std::vector<double> scores(n_test);
  REQUIRE(copod_score(model, test, COPOD_VARIANT_SKEW_CORRECTED, 1, scores.data(), nullptr,
                      nullptr, nullptr) == COPOD_OK);
  std::vector<int32_t> labels(n_test);
  REQUIRE(copod_dataset_labels(test, labels.data(), labels.size()) == COPOD_OK);

  double auc = 0.0;
  double ap = 0.0;
  const bool both = std::count(labels.begin(), labels.end(), 1) > 0 &&
                    std::count(labels.begin(), labels.end(), 0) > 0;
  if (both) {
    REQUIRE(copod_roc_auc(scores.data(), labels.data(), n_test, &auc) == COPOD_OK);
    REQUIRE(copod_average_precision(scores.data(), labels.data(), n_test, &ap) == COPOD_OK);
    CHECK(auc >= 0.0);
    CHECK(auc <= 1.0);
    CHECK(ap >= 0.0);
    CHECK(ap <= 1.0);
  }
  std::vector<int32_t> single(n_test, 1);
  CHECK(copod_roc_auc(scores.data(), single.data(), n_test, &auc) ==
        COPOD_ERROR_INVALID_ARGUMENT);

  copod_model_free(model);
  copod_dataset_free(train);
  copod_dataset_free(test);
  copod_dataset_free(toy);
}

TEST_CASE("explain through the C API") {
  copod_dataset* toy = nullptr;
  REQUIRE(copod_gen_toy(80, 10, 0, 2, &toy) == COPOD_OK);
  copod_model* model = nullptr;
  REQUIRE(copod_fit(toy, &model) == COPOD_OK);

  std::vector<double> x(2);
  REQUIRE(copod_dataset_row(toy, 85, x.data(), x.size()) == COPOD_OK);  // an outlier row
  std::vector<double> per_dim(2), band99(2), bandc(2);
  REQUIRE(copod_explain(model, x.data(), x.size(), toy, 0.1, per_dim.data(), band99.data(),
                        bandc.data()) == COPOD_OK);
  for (int j = 0; j < 2; ++j) {
    CHECK(per_dim[j] >= 0.0);
    CHECK(per_dim[j] <= std::log(91.0));
    CHECK(band99[j] >= bandc[j]);
  }
  CHECK(copod_explain(model, x.data(), x.size(), toy, 2.0, per_dim.data(), band99.data(),
                      bandc.data()) == COPOD_ERROR_INVALID_ARGUMENT);

  copod_model_free(model);
  copod_dataset_free(toy);
}

TEST_CASE("bench and timing through the C API") {
  copod_dataset* a = nullptr;
  copod_dataset* b = nullptr;
  REQUIRE(copod_gen_toy(50, 10, 0, 1, &a) == COPOD_OK);
  REQUIRE(copod_gen_toy(50, 10, 1, 2, &b) == COPOD_OK);

  const copod_dataset* datasets[] = {a, b};
  const char* names[] = {"alpha", "beta"};
  const copod_variant variants[] = {COPOD_VARIANT_SKEW_CORRECTED, COPOD_VARIANT_MAX};
  copod_bench_config config{};
  config.trials = 3;
  config.train_fraction = 0.6;
  config.base_seed = 7;
  config.variants = variants;
  config.n_variants = 2;

  copod_bench_result* result = nullptr;
  REQUIRE(copod_bench_run(datasets, names, 2, &config, &result) == COPOD_OK);
  REQUIRE(copod_bench_row_count(result) == 4);
  CHECK(std::string(copod_bench_row_dataset(result, 0)) == "alpha");
  copod_variant v{};
  REQUIRE(copod_bench_row_variant(result, 0, &v) == COPOD_OK);
  CHECK(v == COPOD_VARIANT_SKEW_CORRECTED);
  double auc = 0, ap = 0, secs = 0;
  size_t invalid = 0;
  REQUIRE(copod_bench_row_stats(result, 0, &auc, &ap, &invalid, &secs) == COPOD_OK);
  CHECK(auc > 0.5);  // toy data is easy

  const auto trials_csv = scratch("bench_trials.csv");
  const auto agg_csv = scratch("bench_agg.csv");
  FileGuard g1(trials_csv), g2(agg_csv);
  REQUIRE(copod_bench_write_trials_csv(result, trials_csv.string().c_str()) == COPOD_OK);
  REQUIRE(copod_bench_write_aggregate_csv(result, agg_csv.string().c_str()) == COPOD_OK);
  CHECK(fs::file_size(trials_csv) > 0);
  CHECK(fs::file_size(agg_csv) > 0);
  copod_bench_result_free(result);

  const size_t ns[] = {200, 200};
  const size_t ds[] = {2, 4};
  copod_timing_result* timing = nullptr;
  REQUIRE(copod_time_scaling(ns, ds, 2, 0, 1, &timing) == COPOD_OK);
  REQUIRE(copod_timing_cell_count(timing) == 2);
  size_t n = 0, d = 0;
  double mean = 0, cv = 0;
  REQUIRE(copod_timing_cell(timing, 1, &n, &d, &mean, &cv) == COPOD_OK);
  CHECK(n == 200);
  CHECK(d == 4);
  CHECK(mean > 0.0);
  copod_timing_result_free(timing);

  copod_dataset_free(a);
  copod_dataset_free(b);
}

TEST_CASE("arff conversion through the C API") {
  const auto arff = scratch("conv.arff");
  FileGuard g1(arff);
  {
    std::ofstream out(arff);
    out << "@relation r\n@attribute x real\n@attribute outlier {'no','yes'}\n"
           "@data\n1,'no'\n2,'yes'\n";
  }
  copod_dataset* ds = nullptr;
  REQUIRE(copod_dataset_load_arff(arff.string().c_str(), nullptr, nullptr, &ds) == COPOD_OK);
  CHECK(copod_dataset_rows(ds) == 2);
  CHECK(copod_dataset_has_labels(ds) == 1);

  const auto csv = scratch("conv.csv");
  FileGuard g2(csv);
  REQUIRE(copod_dataset_write_csv(ds, csv.string().c_str()) == COPOD_OK);
  copod_dataset* back = nullptr;
  REQUIRE(copod_dataset_load_csv(csv.string().c_str(), "label", &back) == COPOD_OK);
  CHECK(copod_dataset_rows(back) == 2);

  CHECK(copod_dataset_load_arff(arff.string().c_str(), "yes", nullptr, &ds) ==
        COPOD_ERROR_INVALID_ARGUMENT);  // half a mapping

  copod_dataset_free(back);
  copod_dataset_free(ds);
}
