#include "dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "rng.hpp"
#include "text.hpp"

namespace copod {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

// Splits into lines, tolerating CRLF and a missing final newline.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      std::string_view line = text.substr(start, i - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.push_back(line);
      start = i + 1;
    }
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string_view strip_quotes(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 &&
      ((s.front() == '\'' && s.back() == '\'') || (s.front() == '"' && s.back() == '"'))) {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

}  // namespace

Dataset::Dataset(std::vector<double> values_row_major, std::size_t rows, std::size_t cols,
                 std::vector<std::string> column_names,
                 std::optional<std::vector<std::int32_t>> labels)
    : values_(std::move(values_row_major)),
      rows_(rows),
      cols_(cols),
      column_names_(std::move(column_names)),
      labels_(std::move(labels)) {
  if (rows_ == 0 || cols_ == 0) {
    throw InvalidArgumentError("a dataset needs at least one row and one column");
  }
  if (values_.size() != rows_ * cols_) {
    throw InvalidArgumentError("dataset value buffer does not match rows*cols");
  }
  if (column_names_.size() != cols_) {
    throw InvalidArgumentError("dataset needs one name per column");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgumentError("dataset values must be finite");
  }
  if (labels_) {
    if (labels_->size() != rows_) {
      throw InvalidArgumentError("labels must have one entry per row");
    }
    for (std::int32_t l : *labels_) {
      if (l != 0 && l != 1) throw InvalidArgumentError("labels must be 0 or 1");
    }
  }
}

std::vector<double> Dataset::column(std::size_t j) const {
  std::vector<double> col(rows_);
  for (std::size_t i = 0; i < rows_; ++i) col[i] = values_[i * cols_ + j];
  return col;
}

Dataset load_csv(const std::filesystem::path& path,
                 const std::optional<std::string>& label_column) {
  const std::string text = read_file(path);
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(path.string() + ": empty file");

  std::vector<std::string> header;
  for (auto name : split(lines[0], ',')) header.emplace_back(trim(name));
  const std::size_t total_cols = header.size();

  std::size_t label_idx = total_cols;  // sentinel: no label column
  if (label_column) {
    const auto it = std::find(header.begin(), header.end(), *label_column);
    if (it == header.end()) {
      throw ParseError(path.string() + ": label column '" + *label_column +
                       "' not found in header");
    }
    label_idx = static_cast<std::size_t>(it - header.begin());
  }
  const std::size_t d = label_column ? total_cols - 1 : total_cols;
  if (d == 0) throw ParseError(path.string() + ": no value columns besides the label");

  std::vector<std::string> column_names;
  for (std::size_t j = 0; j < total_cols; ++j) {
    if (j != label_idx) column_names.push_back(header[j]);
  }

  std::vector<double> values;
  std::vector<std::int32_t> labels;
  std::size_t n = 0;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;  // blank separator lines
    const auto cells = split(lines[li], ',');
    const std::size_t row_no = n + 1;
    if (cells.size() != total_cols) {
      throw ParseError(path.string() + ": row " + std::to_string(row_no) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(total_cols));
    }
    for (std::size_t j = 0; j < total_cols; ++j) {
      const auto cell = trim(cells[j]);
      if (cell.empty()) {
        throw ParseError(path.string() + ": missing value at row " + std::to_string(row_no) +
                         ", column '" + header[j] + "'");
      }
      const auto parsed = parse_real(cell);
      if (!parsed) {
        throw ParseError(path.string() + ": non-numeric cell '" + std::string(cell) +
                         "' at row " + std::to_string(row_no) + ", column '" + header[j] + "'");
      }
      if (j == label_idx) {
        if (*parsed != 0.0 && *parsed != 1.0) {
          throw ParseError(path.string() + ": label value '" + std::string(cell) +
                           "' at row " + std::to_string(row_no) + " is not 0 or 1");
        }
        labels.push_back(static_cast<std::int32_t>(*parsed));
      } else {
        if (!std::isfinite(*parsed)) {
          throw ParseError(path.string() + ": non-finite value at row " +
                           std::to_string(row_no) + ", column '" + header[j] + "'");
        }
        values.push_back(*parsed);
      }
    }
    ++n;
  }
  if (n == 0) throw ParseError(path.string() + ": no data rows");

  std::optional<std::vector<std::int32_t>> maybe_labels;
  if (label_column) maybe_labels = std::move(labels);
  return Dataset(std::move(values), n, d, std::move(column_names), std::move(maybe_labels));
}

Dataset load_arff(const std::filesystem::path& path, const ArffLabelMap& map) {
  const std::string text = read_file(path);
  const auto lines = split_lines(text);

  struct Attribute {
    std::string name;
    bool nominal = false;
  };
  std::vector<Attribute> attrs;
  bool in_data = false;

  std::vector<double> values;
  std::vector<std::int32_t> labels;
  std::size_t n = 0;
  std::size_t label_attr = 0;
  std::size_t d = 0;
  std::vector<std::size_t> value_col_of_attr;  // attr index -> value column or npos
  constexpr std::size_t npos = static_cast<std::size_t>(-1);

  auto match_label = [&](std::string_view raw, std::size_t row_no) -> std::int32_t {
    const std::string cell(strip_quotes(raw));
    const std::string probe = map.case_insensitive ? to_lower(cell) : cell;
    const std::string out_v = map.case_insensitive ? to_lower(map.outlier_value) : map.outlier_value;
    const std::string in_v = map.case_insensitive ? to_lower(map.inlier_value) : map.inlier_value;
    if (probe == out_v) return 1;
    if (probe == in_v) return 0;
    throw ParseError(path.string() + ": data row " + std::to_string(row_no) +
                     ": nominal label '" + cell + "' matches neither '" + map.outlier_value +
                     "' nor '" + map.inlier_value + "' (provide an explicit mapping)");
  };

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto line = trim(lines[li]);
    if (line.empty() || line.front() == '%') continue;

    if (!in_data && line.front() == '@') {
      const std::size_t sp = line.find_first_of(" \t");
      const std::string keyword = to_lower(line.substr(0, sp));
      if (keyword == "@relation") continue;
      if (keyword == "@data") {
        if (attrs.empty()) {
          throw ParseError(path.string() + ": @data before any @attribute");
        }
        // Exactly one nominal attribute plays the label role.
        std::vector<std::string> nominal_names;
        for (const auto& a : attrs) {
          if (a.nominal) nominal_names.push_back(a.name);
        }
        if (nominal_names.empty()) {
          throw ParseError(path.string() + ": no nominal label attribute declared");
        }
        if (nominal_names.size() > 1) {
          std::string joined;
          for (const auto& nm : nominal_names) {
            if (!joined.empty()) joined += ", ";
            joined += "'" + nm + "'";
          }
          throw ParseError(path.string() +
                           ": more than one nominal attribute declared: " + joined);
        }
        value_col_of_attr.assign(attrs.size(), npos);
        for (std::size_t a = 0; a < attrs.size(); ++a) {
          if (attrs[a].nominal) {
            label_attr = a;
          } else {
            value_col_of_attr[a] = d++;
          }
        }
        in_data = true;
        continue;
      }
      if (keyword == "@attribute") {
        if (sp == std::string_view::npos) {
          throw ParseError(path.string() + ": line " + std::to_string(li + 1) +
                           ": @attribute without a name");
        }
        auto rest = trim(line.substr(sp));
        // Attribute name: quoted or a bare token up to whitespace.
        std::string name;
        std::string_view type_part;
        if (!rest.empty() && (rest.front() == '\'' || rest.front() == '"')) {
          const char q = rest.front();
          const std::size_t close = rest.find(q, 1);
          if (close == std::string_view::npos) {
            throw ParseError(path.string() + ": line " + std::to_string(li + 1) +
                             ": unterminated quoted attribute name");
          }
          name = std::string(rest.substr(1, close - 1));
          type_part = trim(rest.substr(close + 1));
        } else {
          const std::size_t ws = rest.find_first_of(" \t");
          if (ws == std::string_view::npos) {
            throw ParseError(path.string() + ": line " + std::to_string(li + 1) +
                             ": @attribute '" + std::string(rest) + "' lacks a type");
          }
          name = std::string(rest.substr(0, ws));
          type_part = trim(rest.substr(ws));
        }
        if (type_part.empty()) {
          throw ParseError(path.string() + ": line " + std::to_string(li + 1) +
                           ": @attribute '" + name + "' lacks a type");
        }
        if (type_part.front() == '{') {
          if (type_part.back() != '}') {
            throw ParseError(path.string() + ": line " + std::to_string(li + 1) +
                             ": unterminated nominal value list for '" + name + "'");
          }
          attrs.push_back({std::move(name), true});
        } else {
          const std::string type = to_lower(trim(type_part));
          // DAMI-style files declare columns as 'real'; treat the usual
          // numeric spellings alike.
          if (type == "numeric" || type == "real" || type == "integer") {
            attrs.push_back({std::move(name), false});
          } else {
            throw ParseError(path.string() + ": line " + std::to_string(li + 1) +
                             ": unsupported attribute type '" + type + "' for '" + name + "'");
          }
        }
        continue;
      }
      throw ParseError(path.string() + ": line " + std::to_string(li + 1) +
                       ": unrecognized declaration '" + std::string(keyword) + "'");
    }

    if (!in_data) {
      throw ParseError(path.string() + ": line " + std::to_string(li + 1) +
                       ": unexpected content before @data");
    }

    const auto cells = split(line, ',');
    const std::size_t row_no = n + 1;
    if (cells.size() != attrs.size()) {
      throw ParseError(path.string() + ": data row " + std::to_string(row_no) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(attrs.size()));
    }
    for (std::size_t a = 0; a < attrs.size(); ++a) {
      const auto cell = trim(cells[a]);
      if (cell == "?") {
        throw ParseError(path.string() + ": data row " + std::to_string(row_no) +
                         ": missing value for attribute '" + attrs[a].name + "'");
      }
      if (a == label_attr) {
        labels.push_back(match_label(cell, row_no));
        continue;
      }
      const auto parsed = parse_real(cell);
      if (!parsed || !std::isfinite(*parsed)) {
        throw ParseError(path.string() + ": data row " + std::to_string(row_no) +
                         ": non-numeric cell '" + std::string(cell) + "' for attribute '" +
                         attrs[a].name + "'");
      }
      values.push_back(*parsed);
    }
    ++n;
  }

  if (!in_data) throw ParseError(path.string() + ": no @data section");
  if (n == 0) throw ParseError(path.string() + ": no data rows");

  std::vector<std::string> column_names;
  for (const auto& a : attrs) {
    if (!a.nominal) column_names.push_back(a.name);
  }
  return Dataset(std::move(values), n, d, std::move(column_names), std::move(labels));
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  // The format has no quoting, so names holding separators cannot be emitted.
  for (const auto& name : ds.column_names()) {
    if (name.find_first_of(",\r\n") != std::string::npos) {
      throw InvalidArgumentError("column name '" + name + "' cannot appear in a CSV header");
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path.string());
  for (std::size_t j = 0; j < ds.cols(); ++j) {
    if (j > 0) out << ',';
    out << ds.column_names()[j];
  }
  if (ds.has_labels()) out << ",label";
  out << '\n';
  for (std::size_t i = 0; i < ds.rows(); ++i) {
    for (std::size_t j = 0; j < ds.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_real17(ds.at(i, j));
    }
    if (ds.has_labels()) out << ',' << ds.labels()[i];
    out << '\n';
  }
  if (!out) throw IoError("failed writing file: " + path.string());
}

std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitPlan& plan) {
  const std::size_t n = ds.rows();
  if (n < 2) throw InvalidArgumentError("split needs at least 2 rows");
  if (!(plan.train_fraction > 0.0 && plan.train_fraction < 1.0)) {
    throw InvalidArgumentError("train_fraction must lie in (0, 1)");
  }
  // Round-half-up pins the train size exactly.
  const auto train_n = static_cast<std::size_t>(
      std::floor(plan.train_fraction * static_cast<double>(n) + 0.5));
  if (train_n == 0 || train_n == n) {
    throw InvalidArgumentError("split would leave train or test empty (n=" +
                               std::to_string(n) + ", fraction=" +
                               format_real17(plan.train_fraction) + ")");
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(plan.seed);
  shuffle(order, rng);

  auto take = [&](std::size_t begin, std::size_t end) {
    std::vector<double> vals;
    vals.reserve((end - begin) * ds.cols());
    std::vector<std::int32_t> labels;
    for (std::size_t k = begin; k < end; ++k) {
      const auto r = ds.row(order[k]);
      vals.insert(vals.end(), r.begin(), r.end());
      if (ds.has_labels()) labels.push_back(ds.labels()[order[k]]);
    }
    std::optional<std::vector<std::int32_t>> maybe_labels;
    if (ds.has_labels()) maybe_labels = std::move(labels);
    return Dataset(std::move(vals), end - begin, ds.cols(), ds.column_names(),
                   std::move(maybe_labels));
  };
  return {take(0, train_n), take(train_n, n)};
}

}  // namespace copod
