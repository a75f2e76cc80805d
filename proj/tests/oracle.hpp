#pragma once

// Brute-force reference implementations used only by tests. Everything here
// is computed by direct enumeration (linear scans, all-pairs counting,
// threshold rescans) with no shared code or data structures with the library,
// so agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

// Sample skewness, evaluated literally: mean-centered cubes averaged with
// 1/n over the cube of the (n-1)-denominator standard deviation.
inline double skewness(const std::vector<double>& col) {
  const std::size_t n = col.size();
  double mean = 0.0;
  for (double x : col) mean += x;
  mean /= static_cast<double>(n);
  double cubes = 0.0;
  double squares = 0.0;
  for (double x : col) {
    cubes += (x - mean) * (x - mean) * (x - mean);
    squares += (x - mean) * (x - mean);
  }
  const double numerator = cubes / static_cast<double>(n);
  const double sd = std::sqrt(squares / static_cast<double>(n - 1));
  if (sd == 0.0) return 0.0;
  return numerator / (sd * sd * sd);
}

inline double left_tail_count(const std::vector<double>& samples, double x) {
  std::size_t k = 0;
  for (double s : samples) {
    if (s <= x) ++k;
  }
  return static_cast<double>(k) / static_cast<double>(samples.size());
}

inline double right_tail_count(const std::vector<double>& samples, double x) {
  std::size_t k = 0;
  for (double s : samples) {
    if (s >= x) ++k;
  }
  return static_cast<double>(k) / static_cast<double>(samples.size());
}

struct Breakdown {
  double p_left = 0.0;
  double p_right = 0.0;
  double p_skew = 0.0;
};

// Tail aggregates of one query against raw training columns, via linear
// scans, the 1/(n+1) probability floor, and the skew-sign tail selection.
inline Breakdown copod_breakdown(const std::vector<std::vector<double>>& train_columns,
                                 const std::vector<double>& x) {
  Breakdown b;
  const std::size_t n = train_columns.front().size();
  const double floor = 1.0 / static_cast<double>(n + 1);
  for (std::size_t j = 0; j < train_columns.size(); ++j) {
    const auto& col = train_columns[j];
    const double u = std::max(left_tail_count(col, x[j]), floor);
    const double v = std::max(right_tail_count(col, x[j]), floor);
    const double w = skewness(col) < 0.0 ? u : v;
    b.p_left += -std::log(u);
    b.p_right += -std::log(v);
    b.p_skew += -std::log(w);
  }
  return b;
}

enum class Variant { left, right, two_tails, skew_corrected, max };
inline constexpr Variant kAllVariants[] = {Variant::left, Variant::right, Variant::two_tails,
                                           Variant::skew_corrected, Variant::max};

inline double copod_score(const std::vector<std::vector<double>>& train_columns,
                          const std::vector<double>& x, Variant variant) {
  const Breakdown b = copod_breakdown(train_columns, x);
  switch (variant) {
    case Variant::left: return b.p_left;
    case Variant::right: return b.p_right;
    case Variant::two_tails: return (b.p_left + b.p_right) / 2.0;
    case Variant::skew_corrected: return b.p_skew;
    case Variant::max: return std::max({b.p_left, b.p_right, b.p_skew});
  }
  return 0.0;
}

// ROC-AUC by exhaustive (positive, negative) pair enumeration with half
// credit for ties.
inline double roc_auc(const std::vector<double>& scores, const std::vector<std::int32_t>& labels) {
  double wins = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      ++pairs;
      if (scores[i] > scores[j]) {
        wins += 1.0;
      } else if (scores[i] == scores[j]) {
        wins += 0.5;
      }
    }
  }
  return wins / static_cast<double>(pairs);
}

// Average precision by enumerating every distinct score as a threshold
// (descending) and rescanning the whole set at each step.
inline double average_precision(const std::vector<double>& scores,
                                const std::vector<std::int32_t>& labels) {
  std::vector<double> thresholds = scores;
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  std::size_t n_pos = 0;
  for (auto l : labels) {
    if (l == 1) ++n_pos;
  }

  double ap = 0.0;
  double prev_recall = 0.0;
  for (double t : thresholds) {
    std::size_t tp = 0;
    std::size_t selected = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] >= t) {
        ++selected;
        if (labels[i] == 1) ++tp;
      }
    }
    const double recall = static_cast<double>(tp) / static_cast<double>(n_pos);
    const double precision = static_cast<double>(tp) / static_cast<double>(selected);
    ap += (recall - prev_recall) * precision;
    prev_recall = recall;
  }
  return ap;
}

}  // namespace oracle
