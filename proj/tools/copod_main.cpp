// copod - command-line front end for the copula-based outlier detector.
// Talks to the core exclusively through the C API in copod/copod.h.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "copod/copod.h"
#include "svg_chart.hpp"

namespace {

namespace fs = std::filesystem;

// Exit codes: 0 ok, 2 input/parse errors, 3 degenerate data, 4 dimension
// mismatch, 1 anything else. Usage errors exit with CLI11's own nonzero code.
int exit_code_for(copod_status status) {
  switch (status) {
    case COPOD_OK: return 0;
    case COPOD_ERROR_IO:
    case COPOD_ERROR_PARSE:
    case COPOD_ERROR_FORMAT_VERSION:
    case COPOD_ERROR_INVALID_ARGUMENT: return 2;
    case COPOD_ERROR_DEGENERATE_DATA: return 3;
    case COPOD_ERROR_DIMENSION_MISMATCH: return 4;
    default: return 1;
  }
}

int fail(copod_status status) {
  std::cerr << "error: " << copod_last_error() << '\n';
  return exit_code_for(status);
}

int fail_message(const std::string& message, int code = 2) {
  std::cerr << "error: " << message << '\n';
  return code;
}

struct DatasetDeleter {
  void operator()(copod_dataset* p) const { copod_dataset_free(p); }
};
struct ModelDeleter {
  void operator()(copod_model* p) const { copod_model_free(p); }
};
struct BenchDeleter {
  void operator()(copod_bench_result* p) const { copod_bench_result_free(p); }
};
struct TimingDeleter {
  void operator()(copod_timing_result* p) const { copod_timing_result_free(p); }
};
using DatasetHandle = std::unique_ptr<copod_dataset, DatasetDeleter>;
using ModelHandle = std::unique_ptr<copod_model, ModelDeleter>;
using BenchHandle = std::unique_ptr<copod_bench_result, BenchDeleter>;
using TimingHandle = std::unique_ptr<copod_timing_result, TimingDeleter>;

std::string fmt17(double v) {
  char buf[64];
  if (copod_format_double(v, buf, sizeof(buf)) != COPOD_OK) return "nan";
  return buf;
}

std::optional<copod_variant> parse_variant(const std::string& token) {
  std::string t = token;
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "left") return COPOD_VARIANT_LEFT;
  if (t == "right") return COPOD_VARIANT_RIGHT;
  if (t == "two" || t == "two_tails") return COPOD_VARIANT_TWO_TAILS;
  if (t == "sc" || t == "skew_corrected") return COPOD_VARIANT_SKEW_CORRECTED;
  if (t == "max") return COPOD_VARIANT_MAX;
  return std::nullopt;
}

const char* variant_name(copod_variant v) {
  switch (v) {
    case COPOD_VARIANT_LEFT: return "left";
    case COPOD_VARIANT_RIGHT: return "right";
    case COPOD_VARIANT_TWO_TAILS: return "two_tails";
    case COPOD_VARIANT_SKEW_CORRECTED: return "skew_corrected";
    case COPOD_VARIANT_MAX: return "max";
  }
  return "?";
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

DatasetHandle load_csv_or_null(const std::string& path, const std::string& label_column,
                               copod_status& status) {
  copod_dataset* raw = nullptr;
  status = copod_dataset_load_csv(path.c_str(),
                                  label_column.empty() ? nullptr : label_column.c_str(), &raw);
  return DatasetHandle(raw);
}

/* ---------------- fit ---------------- */

struct FitArgs {
  std::string input, label_column, output;
};

int run_fit(const FitArgs& args) {
  copod_status status = COPOD_OK;
  auto ds = load_csv_or_null(args.input, args.label_column, status);
  if (!ds) return fail(status);

  copod_model* raw_model = nullptr;
  if ((status = copod_fit(ds.get(), &raw_model)) != COPOD_OK) return fail(status);
  ModelHandle model(raw_model);

  if ((status = copod_model_save(model.get(), args.output.c_str())) != COPOD_OK) {
    return fail(status);
  }

  const size_t d = copod_model_dims(model.get());
  std::vector<double> skew(d);
  copod_model_skew(model.get(), skew.data(), skew.size());
  std::cout << "fitted model: n=" << copod_model_train_rows(model.get()) << " d=" << d << '\n';
  std::cout << "dim\tname\tskew\n";
  for (size_t j = 0; j < d; ++j) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", skew[j]);
    std::cout << (j + 1) << '\t' << copod_model_column_name(model.get(), j) << '\t' << buf
              << '\n';
  }
  std::cout << "model written to " << args.output << '\n';
  return 0;
}

/* ---------------- score ---------------- */

struct ScoreArgs {
  std::string model, input, label_column, variant = "max", output;
  std::size_t threads = 1;
};

int run_score(const ScoreArgs& args) {
  const auto variant = parse_variant(args.variant);
  if (!variant) {
    return fail_message("unknown variant '" + args.variant +
                        "' (expected left|right|two|sc|max)");
  }

  copod_status status = COPOD_OK;
  copod_model* raw_model = nullptr;
  if ((status = copod_model_load(args.model.c_str(), &raw_model)) != COPOD_OK) {
    return fail(status);
  }
  ModelHandle model(raw_model);

  auto ds = load_csv_or_null(args.input, args.label_column, status);
  if (!ds) return fail(status);

  const size_t n = copod_dataset_rows(ds.get());
  std::vector<double> scores(n), p_l(n), p_r(n), p_s(n);
  status = copod_score(model.get(), ds.get(), *variant, args.threads, scores.data(), p_l.data(),
                       p_r.data(), p_s.data());
  if (status != COPOD_OK) return fail(status);

  std::ofstream out(args.output, std::ios::binary);
  if (!out) return fail_message("cannot write file: " + args.output);
  out << "row_index,score,p_l,p_r,p_s\n";
  for (size_t i = 0; i < n; ++i) {
    out << i << ',' << fmt17(scores[i]) << ',' << fmt17(p_l[i]) << ',' << fmt17(p_r[i]) << ','
        << fmt17(p_s[i]) << '\n';
  }
  if (!out) return fail_message("failed writing file: " + args.output);
  std::cout << "scored " << n << " rows (variant " << variant_name(*variant) << ") -> "
            << args.output << '\n';
  return 0;
}

/* ---------------- explain ---------------- */

struct ExplainArgs {
  std::string model, input, label_column, train, svg, tsv;
  std::size_t row = 0;
  double contamination = 0.1;
};

int run_explain(const ExplainArgs& args) {
  copod_status status = COPOD_OK;
  copod_model* raw_model = nullptr;
  if ((status = copod_model_load(args.model.c_str(), &raw_model)) != COPOD_OK) {
    return fail(status);
  }
  ModelHandle model(raw_model);

  auto input = load_csv_or_null(args.input, args.label_column, status);
  if (!input) return fail(status);
  auto train = load_csv_or_null(args.train, args.label_column, status);
  if (!train) return fail(status);

  const size_t d = copod_model_dims(model.get());
  std::vector<double> x(copod_dataset_cols(input.get()));
  if ((status = copod_dataset_row(input.get(), args.row, x.data(), x.size())) != COPOD_OK) {
    return fail(status);
  }

  std::vector<double> per_dim(d), band_99(d), band_contamination(d);
  status = copod_explain(model.get(), x.data(), x.size(), train.get(), args.contamination,
                         per_dim.data(), band_99.data(), band_contamination.data());
  if (status != COPOD_OK) return fail(status);

  // exceeds_99: the dimension score reached the 99th-percentile band.
  std::string tsv = "dimension\tname\tO_d\tband_99\tband_contamination\texceeds_99\n";
  for (size_t j = 0; j < d; ++j) {
    const char* name = copod_model_column_name(model.get(), j);
    tsv += std::to_string(j + 1) + '\t' + (name ? name : "") + '\t' + fmt17(per_dim[j]) + '\t' +
           fmt17(band_99[j]) + '\t' + fmt17(band_contamination[j]) + '\t' +
           (per_dim[j] >= band_99[j] ? '1' : '0') + std::string("\n");
  }
  if (args.tsv.empty()) {
    std::cout << tsv;
  } else {
    std::ofstream out(args.tsv, std::ios::binary);
    if (!out) return fail_message("cannot write file: " + args.tsv);
    out << tsv;
    if (!out) return fail_message("failed writing file: " + args.tsv);
    std::cout << "explanation written to " << args.tsv << '\n';
  }

  if (!args.svg.empty()) {
    copod_cli::DimensionalChart chart;
    chart.title = "Dimensional Outlier Graph - row " + std::to_string(args.row);
    chart.per_dim = per_dim;
    chart.band_99_per_dim = band_99;
    chart.band_contamination_per_dim = band_contamination;
    chart.contamination = args.contamination;
    for (size_t j = 0; j < d; ++j) {
      const char* name = copod_model_column_name(model.get(), j);
      chart.names.emplace_back(name ? name : "");
    }
    try {
      copod_cli::write_dimensional_chart(chart, args.svg);
    } catch (const std::exception& e) {
      return fail_message(e.what());
    }
    std::cout << "chart written to " << args.svg << '\n';
  }
  return 0;
}

/* ---------------- bench ---------------- */

struct BenchArgs {
  std::string data_dir, label_column = "label", variants = "left,right,two,sc,max";
  std::string out, per_trial_out;
  std::uint32_t trials = 10;
  std::uint64_t seed = 0;
  double train_fraction = 0.6;
  std::size_t threads = 1;
  std::string timing_grid, timing_out;
  std::uint32_t timing_repeats = 1;
};

int run_bench_timing(const BenchArgs& args) {
  std::vector<size_t> ns, ds;
  for (const auto& cell : split_list(args.timing_grid)) {
    const auto xpos = cell.find('x');
    if (xpos == std::string::npos) {
      return fail_message("bad timing grid cell '" + cell + "' (expected NxD)");
    }
    try {
      ns.push_back(std::stoull(cell.substr(0, xpos)));
      ds.push_back(std::stoull(cell.substr(xpos + 1)));
    } catch (const std::exception&) {
      return fail_message("bad timing grid cell '" + cell + "' (expected NxD)");
    }
  }
  if (ns.empty()) return fail_message("timing grid is empty");

  copod_timing_result* raw = nullptr;
  copod_status status =
      copod_time_scaling(ns.data(), ds.data(), ns.size(), args.seed, args.timing_repeats, &raw);
  if (status != COPOD_OK) return fail(status);
  TimingHandle timing(raw);

  std::printf("%10s %10s %14s %10s\n", "n", "d", "mean_seconds", "cv");
  for (size_t i = 0; i < copod_timing_cell_count(timing.get()); ++i) {
    size_t n = 0, d = 0;
    double mean = 0, cv = 0;
    copod_timing_cell(timing.get(), i, &n, &d, &mean, &cv);
    std::printf("%10zu %10zu %14.4f %10.3f\n", n, d, mean, cv);
  }
  if (!args.timing_out.empty()) {
    if ((status = copod_timing_write_csv(timing.get(), args.timing_out.c_str())) != COPOD_OK) {
      return fail(status);
    }
    std::cout << "timing table written to " << args.timing_out << '\n';
  }
  return 0;
}

int run_bench(const BenchArgs& args) {
  if (!args.timing_grid.empty()) return run_bench_timing(args);
  if (args.data_dir.empty()) return fail_message("--data is required (or use --timing-grid)");
  if (args.out.empty()) return fail_message("--out is required");

  std::vector<copod_variant> variants;
  for (const auto& token : split_list(args.variants)) {
    const auto v = parse_variant(token);
    if (!v) return fail_message("unknown variant '" + token + "'");
    variants.push_back(*v);
  }
  if (variants.empty()) return fail_message("no variants requested");

  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(args.data_dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      files.push_back(entry.path());
    }
  }
  if (ec) return fail_message("cannot read directory: " + args.data_dir);
  if (files.empty()) return fail_message("no .csv files in " + args.data_dir);
  std::sort(files.begin(), files.end());

  std::vector<DatasetHandle> owners;
  std::vector<const copod_dataset*> datasets;
  std::vector<std::string> names;
  for (const auto& file : files) {
    copod_status status = COPOD_OK;
    auto ds = load_csv_or_null(file.string(), args.label_column, status);
    if (!ds) return fail(status);
    datasets.push_back(ds.get());
    owners.push_back(std::move(ds));
    names.push_back(file.stem().string());
  }
  std::vector<const char*> name_ptrs;
  for (const auto& n : names) name_ptrs.push_back(n.c_str());

  copod_bench_config config{};
  config.trials = args.trials;
  config.train_fraction = args.train_fraction;
  config.base_seed = args.seed;
  config.variants = variants.data();
  config.n_variants = variants.size();
  config.n_threads = args.threads;

  copod_bench_result* raw = nullptr;
  copod_status status =
      copod_bench_run(datasets.data(), name_ptrs.data(), datasets.size(), &config, &raw);
  if (status != COPOD_OK) return fail(status);
  BenchHandle result(raw);

  std::string per_trial = args.per_trial_out;
  if (per_trial.empty()) {
    fs::path p(args.out);
    per_trial = (p.parent_path() / (p.stem().string() + "_trials" + p.extension().string()))
                    .string();
  }
  if ((status = copod_bench_write_trials_csv(result.get(), per_trial.c_str())) != COPOD_OK) {
    return fail(status);
  }
  if ((status = copod_bench_write_aggregate_csv(result.get(), args.out.c_str())) != COPOD_OK) {
    return fail(status);
  }

  std::printf("%-24s %-14s %12s %12s %8s %10s\n", "dataset", "variant", "mean_roc_auc",
              "mean_ap", "invalid", "mean_s");
  for (size_t i = 0; i < copod_bench_row_count(result.get()); ++i) {
    copod_variant v = COPOD_VARIANT_MAX;
    double auc = 0, ap = 0, secs = 0;
    size_t invalid = 0;
    copod_bench_row_variant(result.get(), i, &v);
    copod_bench_row_stats(result.get(), i, &auc, &ap, &invalid, &secs);
    std::printf("%-24s %-14s %12.4f %12.4f %8zu %10.4f\n",
                copod_bench_row_dataset(result.get(), i), variant_name(v), auc, ap, invalid,
                secs);
  }
  std::cout << "aggregate written to " << args.out << ", per-trial to " << per_trial << '\n';
  return 0;
}

/* ---------------- gen / convert ---------------- */

struct GenToyArgs {
  std::size_t inliers = 400, outliers = 40;
  std::string orientation = "lower_left";
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen_toy(const GenToyArgs& args) {
  int upper_right = 0;
  if (args.orientation == "upper_right") {
    upper_right = 1;
  } else if (args.orientation != "lower_left") {
    return fail_message("orientation must be lower_left or upper_right");
  }
  copod_dataset* raw = nullptr;
  copod_status status = copod_gen_toy(args.inliers, args.outliers, upper_right, args.seed, &raw);
  if (status != COPOD_OK) return fail(status);
  DatasetHandle ds(raw);
  if ((status = copod_dataset_write_csv(ds.get(), args.out.c_str())) != COPOD_OK) {
    return fail(status);
  }
  std::cout << "toy dataset (" << copod_dataset_rows(ds.get()) << " rows) written to "
            << args.out << '\n';
  return 0;
}

struct GenRandomArgs {
  std::size_t n = 0, d = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen_random(const GenRandomArgs& args) {
  copod_dataset* raw = nullptr;
  copod_status status = copod_gen_random(args.n, args.d, args.seed, &raw);
  if (status != COPOD_OK) return fail(status);
  DatasetHandle ds(raw);
  if ((status = copod_dataset_write_csv(ds.get(), args.out.c_str())) != COPOD_OK) {
    return fail(status);
  }
  std::cout << "random dataset (" << args.n << "x" << args.d << ") written to " << args.out
            << '\n';
  return 0;
}

struct ConvertArgs {
  std::string arff, out, outlier_value, inlier_value;
};

int run_convert(const ConvertArgs& args) {
  if (args.outlier_value.empty() != args.inlier_value.empty()) {
    return fail_message("provide both --outlier-value and --inlier-value, or neither");
  }
  copod_dataset* raw = nullptr;
  copod_status status = copod_dataset_load_arff(
      args.arff.c_str(), args.outlier_value.empty() ? nullptr : args.outlier_value.c_str(),
      args.inlier_value.empty() ? nullptr : args.inlier_value.c_str(), &raw);
  if (status != COPOD_OK) return fail(status);
  DatasetHandle ds(raw);
  if ((status = copod_dataset_write_csv(ds.get(), args.out.c_str())) != COPOD_OK) {
    return fail(status);
  }
  std::cout << "converted " << copod_dataset_rows(ds.get()) << " rows x "
            << copod_dataset_cols(ds.get()) << " columns -> " << args.out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"copula-based outlier detection (ECDF tail probabilities, no hyperparameters)"};
  app.require_subcommand(1);

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "fit a detector on a CSV file and save the model");
  fit->add_option("--input", fit_args.input, "input CSV with a header row")->required();
  fit->add_option("--label-column", fit_args.label_column,
                  "header name of a 0/1 label column to exclude from the features");
  fit->add_option("--output", fit_args.output, "model file to write")->required();

  ScoreArgs score_args;
  auto* score = app.add_subcommand("score", "score rows of a CSV against a saved model");
  score->add_option("--model", score_args.model, "model file from 'fit'")->required();
  score->add_option("--input", score_args.input, "CSV of points to score")->required();
  score->add_option("--label-column", score_args.label_column,
                    "label column to strip from the input before scoring");
  score->add_option("--variant", score_args.variant,
                    "score variant: left|right|two|sc|max (default max)");
  score->add_option("--threads", score_args.threads, "worker threads for scoring");
  score->add_option("--output", score_args.output,
                    "output CSV (row_index,score,p_l,p_r,p_s)")->required();

  ExplainArgs explain_args;
  auto* explain =
      app.add_subcommand("explain", "per-dimension outlier scores with percentile bands");
  explain->add_option("--model", explain_args.model, "model file from 'fit'")->required();
  explain->add_option("--input", explain_args.input, "CSV holding the row to explain")
      ->required();
  explain->add_option("--label-column", explain_args.label_column,
                      "label column to strip from --input and --train");
  explain->add_option("--row", explain_args.row, "0-based row of --input to explain")
      ->required();
  explain->add_option("--contamination", explain_args.contamination,
                      "assumed outlier fraction in (0,1); places the lower band (default 0.1)");
  explain->add_option("--train", explain_args.train,
                      "CSV whose rows define the percentile bands")->required();
  explain->add_option("--svg", explain_args.svg, "write a Dimensional Outlier Graph SVG here");
  explain->add_option("--tsv", explain_args.tsv, "write the table here instead of stdout");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "multi-trial benchmark over labeled datasets");
  bench->add_option("--data", bench_args.data_dir, "directory of labeled CSV datasets");
  bench->add_option("--label-column", bench_args.label_column,
                    "label column name in each CSV (default 'label')");
  bench->add_option("--trials", bench_args.trials, "trials per dataset (default 10)");
  bench->add_option("--seed", bench_args.seed, "base seed; trial t uses seed+t (default 0)");
  bench->add_option("--train-fraction", bench_args.train_fraction,
                    "train split fraction (default 0.6)");
  bench->add_option("--variants", bench_args.variants,
                    "comma list of left,right,two,sc,max (default all)");
  bench->add_option("--threads", bench_args.threads, "scoring threads (default 1)");
  bench->add_option("--out", bench_args.out, "aggregate CSV path");
  bench->add_option("--per-trial-out", bench_args.per_trial_out,
                    "per-trial CSV path (default <out>_trials.csv)");
  bench->add_option("--timing-grid", bench_args.timing_grid,
                    "run the scaling study instead, e.g. 1000x10,1000x100");
  bench->add_option("--timing-repeats", bench_args.timing_repeats,
                    "repeats per timing cell (default 1)");
  bench->add_option("--timing-out", bench_args.timing_out, "timing matrix CSV path");

  GenToyArgs toy_args;
  GenRandomArgs random_args;
  auto* gen = app.add_subcommand("gen", "generate synthetic datasets");
  gen->require_subcommand(1);
  auto* toy = gen->add_subcommand("toy", "Gaussian inlier blob + uniform corner outliers");
  toy->add_option("--inliers", toy_args.inliers, "inlier count (default 400)");
  toy->add_option("--outliers", toy_args.outliers, "outlier count (default 40)");
  toy->add_option("--orientation", toy_args.orientation,
                  "lower_left or upper_right (default lower_left)");
  toy->add_option("--seed", toy_args.seed, "random seed (default 0)");
  toy->add_option("--out", toy_args.out, "output CSV")->required();
  auto* random = gen->add_subcommand("random", "seeded standard-normal matrix");
  random->add_option("--n", random_args.n, "row count")->required();
  random->add_option("--d", random_args.d, "column count")->required();
  random->add_option("--seed", random_args.seed, "random seed (default 0)");
  random->add_option("--out", random_args.out, "output CSV")->required();

  ConvertArgs convert_args;
  auto* convert = app.add_subcommand("convert", "convert an ARFF dataset to labeled CSV");
  convert->add_option("--arff", convert_args.arff, "input ARFF file")->required();
  convert->add_option("--out", convert_args.out, "output CSV")->required();
  convert->add_option("--outlier-value", convert_args.outlier_value,
                      "nominal value mapped to label 1 (default 'yes')");
  convert->add_option("--inlier-value", convert_args.inlier_value,
                      "nominal value mapped to label 0 (default 'no')");

  CLI11_PARSE(app, argc, argv);

  if (fit->parsed()) return run_fit(fit_args);
  if (score->parsed()) return run_score(score_args);
  if (explain->parsed()) return run_explain(explain_args);
  if (bench->parsed()) return run_bench(bench_args);
  if (gen->parsed()) {
    if (toy->parsed()) return run_gen_toy(toy_args);
    if (random->parsed()) return run_gen_random(random_args);
  }
  if (convert->parsed()) return run_convert(convert_args);
  return 1;
}
