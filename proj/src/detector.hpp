#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dataset.hpp"
#include "ecdf.hpp"

namespace copod {

// Which tail probability feeds the outlier score.
enum class Variant {
  kLeft,           // p_l: negative-log left-tail product
  kRight,          // p_r: negative-log right-tail product
  kTwoTails,       // (p_l + p_r) / 2
  kSkewCorrected,  // p_s: per-dimension tail chosen by skew sign
  kMax,            // max(p_l, p_r, p_s)
};

// Accepts the long spellings plus the short forms left|right|two|sc|max.
std::optional<Variant> variant_from_string(std::string_view name);
std::string_view to_string(Variant v);
inline constexpr Variant kAllVariants[] = {Variant::kLeft, Variant::kRight,
                                           Variant::kTwoTails, Variant::kSkewCorrected,
                                           Variant::kMax};

// Per-dimension copula observations for one query point. Each entry is a
// clamped tail probability in [1/(n+1), 1]; w_j equals u_j when the fitted
// dimension skews negative and v_j otherwise.
struct CopulaObservations {
  std::vector<double> u;  // left tail
  std::vector<double> v;  // right tail
  std::vector<double> w;  // skewness-selected tail
};

// Tail-probability aggregates for one observation. All values are finite and
// lie in [0, d*ln(n+1)].
struct ScoreBreakdown {
  double p_left = 0.0;
  double p_right = 0.0;
  double p_skew = 0.0;
  double score = 0.0;  // per the requested variant
};

// Per-dimension outlier scores for one observation plus the two reference
// bands computed from a training set: the 99th percentile and the
// (1 - contamination) * 100th percentile of the training scores, both
// nearest-rank.
struct DimensionalScores {
  std::vector<double> per_dim;
  std::vector<double> band_99;
  std::vector<double> band_contamination;
  double contamination = 0.0;
};

double variant_score(const ScoreBreakdown& b, Variant v);

// The copula-based outlier detector: one fitted marginal per dimension.
// Scores are comparative (larger = more anomalous), not probabilities.
// Immutable once fitted; concurrent reads need no synchronization.
class CopodModel {
 public:
  static constexpr std::int64_t kFormatVersion = 1;

  // Fits one marginal per column. Requires n >= 2. Deterministic; fitting the
  // same dataset twice serializes to identical bytes.
  static CopodModel fit(const Dataset& train);

  std::size_t dims() const { return marginals_.size(); }
  std::size_t train_rows() const { return n_; }
  const std::vector<std::string>& column_names() const { return column_names_; }
  const MarginalModel& marginal(std::size_t j) const { return marginals_[j]; }

  // Clamped tail probabilities of x under every marginal. The clamp floors
  // each tail at 1/(n+1) so out-of-range queries keep finite log scores;
  // in-sample probabilities are never below 1/n and pass through untouched.
  CopulaObservations copula_observations(std::span<const double> x) const;

  ScoreBreakdown score_one(std::span<const double> x, Variant v) const;

  // Elementwise scores for every row, order preserving. n_threads > 1 splits
  // rows across threads; the result is identical to the serial run.
  std::vector<double> score(const Dataset& points, Variant v, std::size_t n_threads = 1) const;
  std::vector<ScoreBreakdown> score_rows(const Dataset& points, Variant v,
                                         std::size_t n_threads = 1) const;

  // Per-dimension scores O_d(x) = max over the three tails of -ln(tail), with
  // nearest-rank percentile bands taken over every row of train_source.
  DimensionalScores explain(std::span<const double> x, const Dataset& train_source,
                            double contamination) const;

  // Model document: a human-readable JSON object with every sample at 17
  // significant digits. One serialize/deserialize cycle reproduces scores
  // bit-exactly.
  std::string serialize() const;
  static CopodModel deserialize(std::string_view text);
  void save(const std::filesystem::path& path) const;
  static CopodModel load(const std::filesystem::path& path);

  CopodModel(std::vector<MarginalModel> marginals, std::vector<std::string> column_names,
             std::size_t n);

 private:
  std::vector<MarginalModel> marginals_;
  std::vector<std::string> column_names_;
  std::size_t n_ = 0;
};

// Nearest-rank percentile of ascending-sorted values, pct in (0, 100].
double nearest_rank_percentile(std::span<const double> sorted_values, double pct);

}  // namespace copod
