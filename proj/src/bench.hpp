#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "detector.hpp"

namespace copod {

// Multi-trial benchmark configuration. Trial t splits with seed
// base_seed + t, fits on the train part, and evaluates on the test part.
struct TrialConfig {
  std::uint32_t trials = 10;
  double train_fraction = 0.6;
  std::uint64_t base_seed = 0;
  std::vector<Variant> variants{kAllVariants, kAllVariants + 5};
  std::size_t n_threads = 1;  // row parallelism inside scoring only
};

struct TrialOutcome {
  std::uint32_t trial = 0;
  std::uint64_t seed = 0;
  bool valid = true;  // false when the test split lacks one of the classes
  double roc_auc = 0.0;
  double average_precision = 0.0;
  double fit_seconds = 0.0;    // shared by every variant of this trial
  double score_seconds = 0.0;  // ditto: tail probabilities are computed once
};

// One (dataset, variant) row. Means are arithmetic means over valid trials;
// wall_time_seconds is the mean per-trial fit+score time.
struct BenchRow {
  std::string dataset_name;
  Variant variant = Variant::kMax;
  double mean_roc_auc = 0.0;
  double mean_ap = 0.0;
  std::vector<TrialOutcome> trials;
  std::size_t invalid_trials = 0;
  double wall_time_seconds = 0.0;
};

// Runs the full trial grid over every named dataset. Each dataset must carry
// labels with both classes present. A trial whose test split ends up
// single-class is recorded as invalid and excluded from the means, surfacing
// in invalid_trials. Deterministic given the config.
std::vector<BenchRow> run_benchmark(
    const std::vector<std::pair<std::string, const Dataset*>>& datasets,
    const TrialConfig& config);

// Per-trial CSV: dataset,variant,trial,seed,roc_auc,ap,fit_seconds,score_seconds.
// Invalid trials carry nan metrics.
void write_trials_csv(std::span<const BenchRow> rows, const std::filesystem::path& path);

// Aggregate CSV: dataset,variant,valid_trials,invalid_trials,mean_roc_auc,mean_ap.
// Timing is deliberately left out so reruns produce identical bytes.
void write_aggregate_csv(std::span<const BenchRow> rows, const std::filesystem::path& path);

enum class ToyOrientation { kLowerLeft, kUpperRight };

// Two-dimensional toy set: a tight Gaussian blob of inliers plus a uniform
// cloud of outliers in the opposite corner of the unit square. lower_left
// puts the outliers in [0, 0.3]^2 with inliers centered at (0.7, 0.7);
// upper_right is the exact mirror (coordinates -> 1 - coordinate). The
// numeric parameters are illustrative defaults, fixed here so runs are
// reproducible.
struct ToySpec {
  std::size_t n_inliers = 400;
  std::size_t n_outliers = 40;
  ToyOrientation orientation = ToyOrientation::kLowerLeft;
  std::uint64_t seed = 0;
};

Dataset gen_toy(const ToySpec& spec);

// n x d matrix of seeded standard-normal draws, unlabeled.
Dataset gen_random(std::size_t n, std::size_t d, std::uint64_t seed);

// One (n, d) measurement cell: wall time of fit plus in-sample scoring on a
// gen_random dataset, single-threaded, repeated `repeats` times.
struct TimingCell {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> seconds;  // one entry per repeat (fit + score)
  double mean_seconds = 0.0;
  double cv = 0.0;  // coefficient of variation across repeats; 0 for one repeat
};

std::vector<TimingCell> time_scaling(std::span<const std::pair<std::size_t, std::size_t>> grid,
                                     std::uint64_t seed, std::uint32_t repeats = 1);

// Matrix CSV: header "n,<d1>,<d2>,..."; one row per distinct n with
// mean seconds per cell (empty where the grid has no such cell).
void write_timing_csv(std::span<const TimingCell> cells, const std::filesystem::path& path);

}  // namespace copod
