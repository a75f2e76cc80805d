#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>

#include "errors.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "text.hpp"

namespace copod {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool has_both_classes(const std::vector<std::int32_t>& labels) {
  bool pos = false;
  bool neg = false;
  for (auto l : labels) {
    if (l == 1) pos = true; else neg = true;
    if (pos && neg) return true;
  }
  return false;
}

}  // namespace

std::vector<BenchRow> run_benchmark(
    const std::vector<std::pair<std::string, const Dataset*>>& datasets,
    const TrialConfig& config) {
  if (config.trials == 0) throw InvalidArgumentError("benchmark needs at least one trial");
  if (config.variants.empty()) throw InvalidArgumentError("benchmark needs at least one variant");
  for (const auto& [name, ds] : datasets) {
    if (!ds->has_labels() || !has_both_classes(ds->labels())) {
      throw InvalidArgumentError("dataset '" + name +
                                 "' needs labels with both classes present");
    }
  }

  std::vector<BenchRow> rows;
  for (const auto& [name, ds] : datasets) {
    std::vector<BenchRow> dataset_rows;
    dataset_rows.reserve(config.variants.size());
    for (Variant v : config.variants) {
      BenchRow row;
      row.dataset_name = name;
      row.variant = v;
      dataset_rows.push_back(std::move(row));
    }

    for (std::uint32_t t = 0; t < config.trials; ++t) {
      const std::uint64_t seed = config.base_seed + t;
      const auto [train, test] = split(*ds, {config.train_fraction, seed});

      TrialOutcome base;
      base.trial = t;
      base.seed = seed;
      base.valid = has_both_classes(test.labels());

      std::vector<ScoreBreakdown> breakdowns;
      if (base.valid) {
        auto start = std::chrono::steady_clock::now();
        const auto model = CopodModel::fit(train);
        base.fit_seconds = seconds_since(start);
        start = std::chrono::steady_clock::now();
        breakdowns = model.score_rows(test, Variant::kMax, config.n_threads);
        base.score_seconds = seconds_since(start);
      }

      for (std::size_t vi = 0; vi < config.variants.size(); ++vi) {
        TrialOutcome outcome = base;
        if (outcome.valid) {
          std::vector<double> scores(breakdowns.size());
          for (std::size_t i = 0; i < breakdowns.size(); ++i) {
            scores[i] = variant_score(breakdowns[i], config.variants[vi]);
          }
          const auto report = evaluate(scores, test.labels());
          outcome.roc_auc = report.roc_auc;
          outcome.average_precision = report.average_precision;
        }
        dataset_rows[vi].trials.push_back(outcome);
      }
    }

    for (auto& row : dataset_rows) {
      double sum_auc = 0.0;
      double sum_ap = 0.0;
      double sum_secs = 0.0;
      std::size_t valid = 0;
      for (const auto& o : row.trials) {
        if (!o.valid) continue;
        ++valid;
        sum_auc += o.roc_auc;
        sum_ap += o.average_precision;
        sum_secs += o.fit_seconds + o.score_seconds;
      }
      row.invalid_trials = row.trials.size() - valid;
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.mean_roc_auc = valid ? sum_auc / static_cast<double>(valid) : nan;
      row.mean_ap = valid ? sum_ap / static_cast<double>(valid) : nan;
      row.wall_time_seconds = valid ? sum_secs / static_cast<double>(valid) : nan;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_trials_csv(std::span<const BenchRow> rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path.string());
  out << "dataset,variant,trial,seed,roc_auc,ap,fit_seconds,score_seconds\n";
  for (const auto& row : rows) {
    for (const auto& o : row.trials) {
      out << row.dataset_name << ',' << to_string(row.variant) << ',' << o.trial << ','
          << o.seed << ',';
      if (o.valid) {
        out << format_real17(o.roc_auc) << ',' << format_real17(o.average_precision);
      } else {
        out << "nan,nan";
      }
      out << ',' << format_real17(o.fit_seconds) << ',' << format_real17(o.score_seconds)
          << '\n';
    }
  }
  if (!out) throw IoError("failed writing file: " + path.string());
}

void write_aggregate_csv(std::span<const BenchRow> rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path.string());
  out << "dataset,variant,valid_trials,invalid_trials,mean_roc_auc,mean_ap\n";
  for (const auto& row : rows) {
    out << row.dataset_name << ',' << to_string(row.variant) << ','
        << (row.trials.size() - row.invalid_trials) << ',' << row.invalid_trials << ','
        << format_real17(row.mean_roc_auc) << ',' << format_real17(row.mean_ap) << '\n';
  }
  if (!out) throw IoError("failed writing file: " + path.string());
}

Dataset gen_toy(const ToySpec& spec) {
  if (spec.n_inliers == 0 || spec.n_outliers == 0) {
    throw InvalidArgumentError("toy generation needs at least one inlier and one outlier");
  }
  constexpr double kInlierMean = 0.7;
  constexpr double kInlierSigma = 0.08;
  constexpr double kOutlierSide = 0.3;

  // Canonical layout: inlier blob high, outlier cloud in the low corner.
  // upper_right is exactly the mirrored dataset (coordinate -> 1 - coordinate),
  // so the two orientations share draws and differ only by reflection.
  Rng rng(spec.seed);
  const std::size_t n = spec.n_inliers + spec.n_outliers;
  std::vector<double> values;
  values.reserve(n * 2);
  std::vector<std::int32_t> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < spec.n_inliers; ++i) {
    for (int axis = 0; axis < 2; ++axis) {
      values.push_back(std::clamp(kInlierMean + kInlierSigma * rng.normal(), 0.0, 1.0));
    }
    labels.push_back(0);
  }
  for (std::size_t i = 0; i < spec.n_outliers; ++i) {
    for (int axis = 0; axis < 2; ++axis) {
      values.push_back(rng.uniform(0.0, kOutlierSide));
    }
    labels.push_back(1);
  }
  if (spec.orientation == ToyOrientation::kUpperRight) {
    for (double& v : values) v = 1.0 - v;
  }
  return Dataset(std::move(values), n, 2, {"x", "y"}, std::move(labels));
}

Dataset gen_random(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n == 0 || d == 0) throw InvalidArgumentError("gen_random needs n >= 1 and d >= 1");
  Rng rng(seed);
  std::vector<double> values(n * d);
  for (double& v : values) v = rng.normal();
  std::vector<std::string> names(d);
  for (std::size_t j = 0; j < d; ++j) names[j] = "f" + std::to_string(j);
  return Dataset(std::move(values), n, d, std::move(names));
}

std::vector<TimingCell> time_scaling(std::span<const std::pair<std::size_t, std::size_t>> grid,
                                     std::uint64_t seed, std::uint32_t repeats) {
  if (grid.empty()) throw InvalidArgumentError("timing grid must be nonempty");
  if (repeats == 0) throw InvalidArgumentError("timing needs at least one repeat");

  std::vector<TimingCell> cells;
  cells.reserve(grid.size());
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const auto [n, d] = grid[gi];
    TimingCell cell;
    cell.n = n;
    cell.d = d;
    for (std::uint32_t r = 0; r < repeats; ++r) {
      const auto ds = gen_random(n, d, seed + gi * repeats + r);
      const auto start = std::chrono::steady_clock::now();
      const auto model = CopodModel::fit(ds);
      const auto scores = model.score(ds, Variant::kMax, /*n_threads=*/1);
      cell.seconds.push_back(seconds_since(start));
      (void)scores;
    }
    double sum = 0.0;
    for (double s : cell.seconds) sum += s;
    cell.mean_seconds = sum / static_cast<double>(repeats);
    if (repeats >= 2 && cell.mean_seconds > 0.0) {
      double ss = 0.0;
      for (double s : cell.seconds) ss += (s - cell.mean_seconds) * (s - cell.mean_seconds);
      cell.cv = std::sqrt(ss / static_cast<double>(repeats - 1)) / cell.mean_seconds;
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

void write_timing_csv(std::span<const TimingCell> cells, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path.string());

  std::vector<std::size_t> ns;
  std::vector<std::size_t> ds;
  std::map<std::pair<std::size_t, std::size_t>, double> mean;
  for (const auto& c : cells) {
    if (std::find(ns.begin(), ns.end(), c.n) == ns.end()) ns.push_back(c.n);
    if (std::find(ds.begin(), ds.end(), c.d) == ds.end()) ds.push_back(c.d);
    mean[{c.n, c.d}] = c.mean_seconds;
  }
  std::sort(ns.begin(), ns.end());
  std::sort(ds.begin(), ds.end());

  out << "n";
  for (auto d : ds) out << ",d=" << d;
  out << '\n';
  for (auto n : ns) {
    out << n;
    for (auto d : ds) {
      out << ',';
      const auto it = mean.find({n, d});
      if (it != mean.end()) out << format_real17(it->second);
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing file: " + path.string());
}

}  // namespace copod
