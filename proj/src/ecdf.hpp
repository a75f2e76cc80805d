#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace copod {

// Sample skewness: third central moment with a 1/n numerator over the cube of
// the (n-1)-denominator standard deviation. Zero-variance input maps to 0.
// Requires n >= 2 finite values.
double skewness(std::span<const double> column);

// One dimension's marginal: a sorted copy of the fitted column plus its
// skewness coefficient. Both tail CDFs are answered by binary search, so a
// fitted marginal costs O(n log n) once and O(log n) per query. Immutable
// after construction and safe for unrestricted concurrent reads.
class MarginalModel {
 public:
  // Sorts a copy of the column and computes its skewness (0 when n == 1 or
  // the column is constant). Rejects empty or non-finite input.
  static MarginalModel fit(std::span<const double> column);

  // Rebuilds a marginal from already-sorted samples, e.g. from a model
  // document. Rejects non-finite or decreasing samples.
  MarginalModel(std::vector<double> sorted_samples, double skew);

  // P(X <= x): fraction of stored samples <= x, ties inclusive. Finite x only.
  double left_tail(double x) const;

  // P(X >= x): fraction of stored samples >= x, ties inclusive. Equals the
  // left tail of the negated samples evaluated at -x, exactly.
  double right_tail(double x) const;

  // Integer counts behind the two tails. left_count(x) + right_count(x)
  // always equals n + #{samples == x}.
  std::size_t left_count(double x) const;
  std::size_t right_count(double x) const;

  double skew() const { return skew_; }
  std::size_t size() const { return sorted_samples_.size(); }
  const std::vector<double>& sorted_samples() const { return sorted_samples_; }

 private:
  std::vector<double> sorted_samples_;
  double skew_ = 0.0;
};

}  // namespace copod
