#include "ecdf.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "text.hpp"

namespace copod {

double skewness(std::span<const double> column) {
  const std::size_t n = column.size();
  if (n < 2) {
    throw InvalidArgumentError("skewness requires at least 2 values, got " +
                               std::to_string(n));
  }
  double mean = 0.0;
  for (double x : column) {
    if (!std::isfinite(x)) throw InvalidArgumentError("skewness: non-finite value");
    mean += x;
  }
  mean /= static_cast<double>(n);

  double sum_sq = 0.0;
  double sum_cb = 0.0;
  for (double x : column) {
    const double c = x - mean;
    sum_sq += c * c;
    sum_cb += c * c * c;
  }
  const double third_moment = sum_cb / static_cast<double>(n);
  const double sd = std::sqrt(sum_sq / static_cast<double>(n - 1));
  const double denom = sd * sd * sd;
  if (denom == 0.0) return 0.0;
  return third_moment / denom;
}

MarginalModel MarginalModel::fit(std::span<const double> column) {
  if (column.empty()) throw InvalidArgumentError("cannot fit a marginal on an empty column");
  std::vector<double> sorted(column.begin(), column.end());
  for (double x : sorted) {
    if (!std::isfinite(x)) {
      throw InvalidArgumentError("cannot fit a marginal on non-finite value " +
                                 format_real17(x));
    }
  }
  std::sort(sorted.begin(), sorted.end());
  const double skew = column.size() >= 2 ? skewness(column) : 0.0;
  return MarginalModel(std::move(sorted), skew);
}

MarginalModel::MarginalModel(std::vector<double> sorted_samples, double skew)
    : sorted_samples_(std::move(sorted_samples)), skew_(skew) {
  if (sorted_samples_.empty()) {
    throw InvalidArgumentError("a marginal needs at least one sample");
  }
  if (!std::isfinite(skew_)) throw InvalidArgumentError("marginal skew must be finite");
  for (std::size_t i = 0; i < sorted_samples_.size(); ++i) {
    if (!std::isfinite(sorted_samples_[i])) {
      throw InvalidArgumentError("marginal samples must be finite");
    }
    if (i > 0 && sorted_samples_[i] < sorted_samples_[i - 1]) {
      throw InvalidArgumentError("marginal samples must be nondecreasing");
    }
  }
}

std::size_t MarginalModel::left_count(double x) const {
  if (!std::isfinite(x)) throw InvalidArgumentError("left_tail: non-finite query");
  const auto it = std::upper_bound(sorted_samples_.begin(), sorted_samples_.end(), x);
  return static_cast<std::size_t>(it - sorted_samples_.begin());
}

std::size_t MarginalModel::right_count(double x) const {
  if (!std::isfinite(x)) throw InvalidArgumentError("right_tail: non-finite query");
  const auto it = std::lower_bound(sorted_samples_.begin(), sorted_samples_.end(), x);
  return static_cast<std::size_t>(sorted_samples_.end() - it);
}

double MarginalModel::left_tail(double x) const {
  return static_cast<double>(left_count(x)) / static_cast<double>(sorted_samples_.size());
}

double MarginalModel::right_tail(double x) const {
  return static_cast<double>(right_count(x)) / static_cast<double>(sorted_samples_.size());
}

}  // namespace copod
