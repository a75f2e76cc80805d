#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace copod {

namespace {

struct ClassCounts {
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
};

ClassCounts check_inputs(std::span<const double> scores, std::span<const std::int32_t> labels) {
  if (scores.size() != labels.size()) {
    throw InvalidArgumentError("scores and labels must have equal length");
  }
  if (scores.empty()) throw InvalidArgumentError("metrics need at least one observation");
  ClassCounts c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) throw InvalidArgumentError("metrics: non-finite score");
    if (labels[i] != 0 && labels[i] != 1) {
      throw InvalidArgumentError("metrics: labels must be 0 or 1");
    }
    if (labels[i] == 1) ++c.n_pos; else ++c.n_neg;
  }
  if (c.n_pos == 0 || c.n_neg == 0) {
    throw InvalidArgumentError("metrics need both classes present (n_pos=" +
                               std::to_string(c.n_pos) + ", n_neg=" +
                               std::to_string(c.n_neg) + ")");
  }
  return c;
}

std::vector<std::size_t> order_by_score_asc(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  return order;
}

}  // namespace

double roc_auc(std::span<const double> scores, std::span<const std::int32_t> labels) {
  const auto counts = check_inputs(scores, labels);
  const auto order = order_by_score_asc(scores);
  const std::size_t m = scores.size();

  // Rank-sum form of the Mann-Whitney statistic; ties share their average
  // rank, which is exactly the half-credit pair count.
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < m) {
    std::size_t j = i;
    while (j < m && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = static_cast<double>(i + j + 1) / 2.0;  // ranks are 1-based
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) rank_sum_pos += avg_rank;
    }
    i = j;
  }
  const auto n_pos = static_cast<double>(counts.n_pos);
  const auto n_neg = static_cast<double>(counts.n_neg);
  const double u = rank_sum_pos - n_pos * (n_pos + 1.0) / 2.0;
  return u / (n_pos * n_neg);
}

double average_precision(std::span<const double> scores, std::span<const std::int32_t> labels) {
  const auto counts = check_inputs(scores, labels);
  auto order = order_by_score_asc(scores);
  std::reverse(order.begin(), order.end());  // descending sweep
  const std::size_t m = scores.size();

  double ap = 0.0;
  double prev_recall = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t i = 0;
  while (i < m) {
    std::size_t j = i;
    while (j < m && scores[order[j]] == scores[order[i]]) ++j;
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) ++tp; else ++fp;
    }
    const double recall = static_cast<double>(tp) / static_cast<double>(counts.n_pos);
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    ap += (recall - prev_recall) * precision;
    prev_recall = recall;
    i = j;
  }
  return ap;
}

MetricReport evaluate(std::span<const double> scores, std::span<const std::int32_t> labels) {
  const auto counts = check_inputs(scores, labels);
  MetricReport r;
  r.roc_auc = roc_auc(scores, labels);
  r.average_precision = average_precision(scores, labels);
  r.n_pos = counts.n_pos;
  r.n_neg = counts.n_neg;
  return r;
}

}  // namespace copod
