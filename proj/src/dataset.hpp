#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace copod {

// An n x d matrix of finite reals with optional binary outlier labels
// (1 = outlier) and per-column names. Immutable after construction and safe
// to share across concurrent readers.
class Dataset {
 public:
  // Validates shape, finiteness, label domain, and name count.
  Dataset(std::vector<double> values_row_major, std::size_t rows, std::size_t cols,
          std::vector<std::string> column_names,
          std::optional<std::vector<std::int32_t>> labels = std::nullopt);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double at(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }
  const std::vector<double>& values() const { return values_; }

  bool has_labels() const { return labels_.has_value(); }
  const std::vector<std::int32_t>& labels() const { return *labels_; }

  const std::vector<std::string>& column_names() const { return column_names_; }

  // Copy of column j (row-major storage, so columns are gathered).
  std::vector<double> column(std::size_t j) const;

 private:
  std::vector<double> values_;  // row-major, rows_ * cols_
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::string> column_names_;
  std::optional<std::vector<std::int32_t>> labels_;
};

struct SplitPlan {
  double train_fraction = 0.6;
  std::uint64_t seed = 0;
};

// Maps a nominal ARFF label vocabulary onto {0, 1}. The default handles the
// usual convention: 'yes' -> 1, 'no' -> 0, case-insensitively.
struct ArffLabelMap {
  std::string outlier_value = "yes";
  std::string inlier_value = "no";
  bool case_insensitive = true;
};

// Reads a UTF-8 comma-separated file with one header row and decimal cells.
// When label_column names a header, that column is split off as the labels and
// must contain only 0/1. Missing, non-numeric, and non-finite cells are
// reported with their row number (1-based, header excluded) and column name.
Dataset load_csv(const std::filesystem::path& path,
                 const std::optional<std::string>& label_column = std::nullopt);

// Reads the ARFF subset: '%' comments, @relation, numeric and nominal
// @attribute declarations (case-insensitive keywords), and comma-separated
// @data rows. Exactly one nominal attribute must be present; it becomes the
// label under the given vocabulary mapping. Rows with missing values ('?')
// are rejected.
Dataset load_arff(const std::filesystem::path& path, const ArffLabelMap& labels = {});

// Writes the header plus one row per observation, every value at 17
// significant digits so a re-load reproduces the dataset exactly. A label
// column named "label" is appended when labels are present.
void write_csv(const Dataset& ds, const std::filesystem::path& path);

// Partitions rows into train/test by a seeded uniform random permutation.
// Train size is round-half-up of train_fraction * n; no stratification.
// Deterministic for a fixed plan. Throws when either side would be empty.
std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitPlan& plan);

}  // namespace copod
