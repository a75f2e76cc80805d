#pragma once

#include <cstdint>
#include <span>

namespace copod {

struct MetricReport {
  double roc_auc = 0.0;
  double average_precision = 0.0;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
};

// Mann-Whitney ROC-AUC: the fraction of (positive, negative) pairs where the
// positive scores higher, ties counted half. Higher score = more anomalous =
// class 1. Both classes must be present; scores must be finite.
double roc_auc(std::span<const double> scores, std::span<const std::int32_t> labels);

// Average precision by the step sum over the descending-score threshold
// sweep, equal scores processed as one group. No interpolation.
double average_precision(std::span<const double> scores, std::span<const std::int32_t> labels);

MetricReport evaluate(std::span<const double> scores, std::span<const std::int32_t> labels);

}  // namespace copod
