#include "detector.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "errors.hpp"
#include "text.hpp"

namespace copod {

std::optional<Variant> variant_from_string(std::string_view name) {
  const std::string probe = to_lower(trim(name));
  if (probe == "left") return Variant::kLeft;
  if (probe == "right") return Variant::kRight;
  if (probe == "two" || probe == "two_tails") return Variant::kTwoTails;
  if (probe == "sc" || probe == "skew_corrected") return Variant::kSkewCorrected;
  if (probe == "max") return Variant::kMax;
  return std::nullopt;
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kLeft: return "left";
    case Variant::kRight: return "right";
    case Variant::kTwoTails: return "two_tails";
    case Variant::kSkewCorrected: return "skew_corrected";
    case Variant::kMax: return "max";
  }
  return "?";
}

double variant_score(const ScoreBreakdown& b, Variant v) {
  switch (v) {
    case Variant::kLeft: return b.p_left;
    case Variant::kRight: return b.p_right;
    case Variant::kTwoTails: return 0.5 * (b.p_left + b.p_right);
    case Variant::kSkewCorrected: return b.p_skew;
    case Variant::kMax: return std::max({b.p_left, b.p_right, b.p_skew});
  }
  return 0.0;
}

CopodModel::CopodModel(std::vector<MarginalModel> marginals,
                       std::vector<std::string> column_names, std::size_t n)
    : marginals_(std::move(marginals)), column_names_(std::move(column_names)), n_(n) {
  if (marginals_.empty()) throw InvalidArgumentError("model needs at least one dimension");
  if (column_names_.size() != marginals_.size()) {
    throw InvalidArgumentError("model needs one column name per dimension");
  }
  for (const auto& m : marginals_) {
    if (m.size() != n_) {
      throw InvalidArgumentError("all marginals must share the same sample count");
    }
  }
}

CopodModel CopodModel::fit(const Dataset& train) {
  if (train.rows() < 2) {
    throw DegenerateDataError("fitting needs at least 2 rows, got " +
                              std::to_string(train.rows()));
  }
  std::vector<MarginalModel> marginals;
  marginals.reserve(train.cols());
  for (std::size_t j = 0; j < train.cols(); ++j) {
    const auto col = train.column(j);
    marginals.push_back(MarginalModel::fit(col));
  }
  return CopodModel(std::move(marginals), train.column_names(), train.rows());
}

CopulaObservations CopodModel::copula_observations(std::span<const double> x) const {
  const std::size_t d = dims();
  if (x.size() != d) {
    throw DimensionMismatchError("query has " + std::to_string(x.size()) +
                                 " dimensions, model has " + std::to_string(d));
  }
  const double floor = 1.0 / static_cast<double>(n_ + 1);
  CopulaObservations obs;
  obs.u.resize(d);
  obs.v.resize(d);
  obs.w.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto& m = marginals_[j];
    obs.u[j] = std::max(m.left_tail(x[j]), floor);
    obs.v[j] = std::max(m.right_tail(x[j]), floor);
    obs.w[j] = m.skew() < 0.0 ? obs.u[j] : obs.v[j];
  }
  return obs;
}

ScoreBreakdown CopodModel::score_one(std::span<const double> x, Variant v) const {
  const auto obs = copula_observations(x);
  ScoreBreakdown b;
  for (std::size_t j = 0; j < obs.u.size(); ++j) {
    b.p_left -= std::log(obs.u[j]);
    b.p_right -= std::log(obs.v[j]);
    b.p_skew -= std::log(obs.w[j]);
  }
  b.score = variant_score(b, v);
  return b;
}

std::vector<ScoreBreakdown> CopodModel::score_rows(const Dataset& points, Variant v,
                                                   std::size_t n_threads) const {
  if (points.cols() != dims()) {
    throw DimensionMismatchError("dataset has " + std::to_string(points.cols()) +
                                 " dimensions, model has " + std::to_string(dims()));
  }
  const std::size_t n = points.rows();
  std::vector<ScoreBreakdown> out(n);
  n_threads = std::clamp<std::size_t>(n_threads, 1, n);

  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = score_one(points.row(i), v);
  };
  if (n_threads == 1) {
    run(0, n);
  } else {
    // Fixed row chunks; each thread writes disjoint slots, so the result
    // cannot depend on scheduling.
    std::vector<std::thread> workers;
    const std::size_t chunk = (n + n_threads - 1) / n_threads;
    for (std::size_t t = 0; t < n_threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(begin + chunk, n);
      if (begin >= end) break;
      workers.emplace_back(run, begin, end);
    }
    for (auto& w : workers) w.join();
  }
  return out;
}

std::vector<double> CopodModel::score(const Dataset& points, Variant v,
                                      std::size_t n_threads) const {
  const auto rows = score_rows(points, v, n_threads);
  std::vector<double> scores(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) scores[i] = rows[i].score;
  return scores;
}

double nearest_rank_percentile(std::span<const double> sorted_values, double pct) {
  if (sorted_values.empty()) throw InvalidArgumentError("percentile of empty range");
  const auto count = static_cast<double>(sorted_values.size());
  // The 1e-9 backoff keeps ranks that land exactly on an integer from being
  // pushed up a slot by floating-point round-up.
  auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * count - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted_values.size());
  return sorted_values[rank - 1];
}

DimensionalScores CopodModel::explain(std::span<const double> x, const Dataset& train_source,
                                      double contamination) const {
  if (!(contamination > 0.0 && contamination < 1.0)) {
    throw InvalidArgumentError("contamination must lie in (0, 1)");
  }
  if (train_source.cols() != dims()) {
    throw DimensionMismatchError("training source has " + std::to_string(train_source.cols()) +
                                 " dimensions, model has " + std::to_string(dims()));
  }
  const std::size_t d = dims();

  auto per_dim_scores = [&](std::span<const double> point, std::vector<double>& out) {
    const auto obs = copula_observations(point);
    for (std::size_t j = 0; j < d; ++j) {
      out[j] = std::max({-std::log(obs.u[j]), -std::log(obs.v[j]), -std::log(obs.w[j])});
    }
  };

  DimensionalScores result;
  result.contamination = contamination;
  result.per_dim.resize(d);
  per_dim_scores(x, result.per_dim);

  // Empirical distribution of each dimension's score over the training rows.
  std::vector<std::vector<double>> train_scores(d);
  for (auto& col : train_scores) col.reserve(train_source.rows());
  std::vector<double> row_scores(d);
  for (std::size_t i = 0; i < train_source.rows(); ++i) {
    per_dim_scores(train_source.row(i), row_scores);
    for (std::size_t j = 0; j < d; ++j) train_scores[j].push_back(row_scores[j]);
  }

  result.band_99.resize(d);
  result.band_contamination.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::sort(train_scores[j].begin(), train_scores[j].end());
    result.band_99[j] = nearest_rank_percentile(train_scores[j], 99.0);
    result.band_contamination[j] =
        nearest_rank_percentile(train_scores[j], (1.0 - contamination) * 100.0);
  }
  return result;
}

namespace {

void append_json_string(std::string& out, std::string_view s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

std::string CopodModel::serialize() const {
  std::string out;
  out += "{\n";
  out += "  \"format_version\": " + std::to_string(kFormatVersion) + ",\n";
  out += "  \"n\": " + std::to_string(n_) + ",\n";
  out += "  \"d\": " + std::to_string(dims()) + ",\n";
  out += "  \"column_names\": [";
  for (std::size_t j = 0; j < column_names_.size(); ++j) {
    if (j > 0) out += ", ";
    append_json_string(out, column_names_[j]);
  }
  out += "],\n";
  out += "  \"marginals\": [\n";
  for (std::size_t j = 0; j < marginals_.size(); ++j) {
    const auto& m = marginals_[j];
    out += "    {\"skew\": " + format_real17(m.skew()) + ", \"sorted_samples\": [";
    const auto& samples = m.sorted_samples();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_real17(samples[i]);
    }
    out += "]}";
    out += (j + 1 < marginals_.size()) ? ",\n" : "\n";
  }
  out += "  ]\n";
  out += "}\n";
  return out;
}

CopodModel CopodModel::deserialize(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("model document: top level must be an object");

  if (!doc.contains("format_version") || !doc["format_version"].is_number_integer()) {
    throw ParseError("model document: missing integer format_version");
  }
  const auto version = doc["format_version"].get<std::int64_t>();
  if (version != kFormatVersion) {
    throw FormatVersionError("model document: format_version " + std::to_string(version) +
                             " is not supported (expected " + std::to_string(kFormatVersion) +
                             ")");
  }

  auto require = [&](const char* key) -> const nlohmann::json& {
    if (!doc.contains(key)) throw ParseError(std::string("model document: missing '") + key + "'");
    return doc[key];
  };
  const auto& n_field = require("n");
  const auto& d_field = require("d");
  if (!n_field.is_number_unsigned() || !d_field.is_number_unsigned()) {
    throw ParseError("model document: n and d must be nonnegative integers");
  }
  const auto n = n_field.get<std::size_t>();
  const auto d = d_field.get<std::size_t>();
  if (n < 1 || d < 1) throw ParseError("model document: n and d must be positive");

  const auto& names_field = require("column_names");
  if (!names_field.is_array() || names_field.size() != d) {
    throw ParseError("model document: column_names must be an array of d strings");
  }
  std::vector<std::string> names;
  for (const auto& nm : names_field) {
    if (!nm.is_string()) throw ParseError("model document: column_names entries must be strings");
    names.push_back(nm.get<std::string>());
  }

  const auto& marg_field = require("marginals");
  if (!marg_field.is_array() || marg_field.size() != d) {
    throw ParseError("model document: marginals must be an array of d objects");
  }
  std::vector<MarginalModel> marginals;
  marginals.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto& mj = marg_field[j];
    if (!mj.is_object() || !mj.contains("skew") || !mj.contains("sorted_samples")) {
      throw ParseError("model document: marginal " + std::to_string(j) +
                       " needs 'skew' and 'sorted_samples'");
    }
    if (!mj["skew"].is_number()) {
      throw ParseError("model document: marginal " + std::to_string(j) + " skew must be a number");
    }
    const double skew = mj["skew"].get<double>();
    const auto& samples_field = mj["sorted_samples"];
    if (!samples_field.is_array() || samples_field.size() != n) {
      throw ParseError("model document: marginal " + std::to_string(j) +
                       " must carry exactly n sorted samples");
    }
    std::vector<double> samples;
    samples.reserve(n);
    for (const auto& s : samples_field) {
      if (!s.is_number()) {
        throw ParseError("model document: marginal " + std::to_string(j) +
                         " samples must be numbers");
      }
      samples.push_back(s.get<double>());
    }
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (samples[i] < samples[i - 1]) {
        throw ParseError("model document: marginal " + std::to_string(j) +
                         " samples are not ascending at index " + std::to_string(i));
      }
    }
    try {
      marginals.emplace_back(std::move(samples), skew);
    } catch (const InvalidArgumentError& e) {
      throw ParseError("model document: marginal " + std::to_string(j) + ": " + e.what());
    }
  }
  return CopodModel(std::move(marginals), std::move(names), n);
}

void CopodModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model file: " + path.string());
  out << serialize();
  if (!out) throw IoError("failed writing model file: " + path.string());
}

CopodModel CopodModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

}  // namespace copod
