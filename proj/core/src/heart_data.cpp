// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include "msc/heart_data.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string_view>

#include "msc/errors.hpp"

namespace msc {
namespace {

constexpr std::size_t kRawColumns = 14;

enum RawColumn : std::size_t {
  kAge, kSex, kCp, kTrestbps, kChol, kFbs, kRestecg, kThalach, kExang, kOldpeak, kSlope, kCa, kThal, kNum
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw DataError(source + ":" + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view field, const std::string& source, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
    fail(source, line, "cannot parse numeric field '" + std::string(field) + "'");
  }
  return value;
}

int parse_level(double value, std::initializer_list<int> levels, const char* name,
                const std::string& source, std::size_t line) {
  const double rounded = std::round(value);
  if (rounded == value) {
    for (int level : levels) {
      if (static_cast<int>(rounded) == level) return level;
    }
  }
  std::ostringstream msg;
  msg << "unexpected " << name << " level " << value;
  fail(source, line, msg.str());
}

}  // namespace

void Dataset::validate() const {
  if (X.rows() < 1 || X.cols() < 1) throw DataError("dataset must have n >= 1 and d >= 1");
  if (Y.size() != X.rows()) throw DataError("response length does not match the design rows");
  if (!X.allFinite()) throw DataError("design matrix has non-finite entries");
  for (Eigen::Index i = 0; i < Y.size(); ++i) {
    if (Y[i] != 0.0 && Y[i] != 1.0) throw DataError("response must be binary");
  }
  if (!column_names.empty() && column_names.size() != d()) {
    throw DataError("column name count does not match the design");
  }
}

const std::vector<std::string>& heart_column_names(bool intercept) {
  static const std::vector<std::string> with = {
      "sex",    "ca",      "trestbps", "age",       "chol",      "fbs",
      "thalach", "exang",  "oldpeak",  "cp=2",      "cp=3",      "cp=4",
      "restecg=1", "restecg=2", "slope=2", "slope=3", "thal=6", "thal=7", "intercept"};
  static const std::vector<std::string> without(with.begin(), with.end() - 1);
  return intercept ? with : without;
}

Dataset parse_heart_dataset(std::istream& in, const std::string& source,
                            const HeartLoadOptions& options, HeartLoadReport* report) {
  const auto& names = heart_column_names(options.intercept);
  const std::size_t d = names.size();
  std::vector<double> rows;
  std::vector<double> response;
  HeartLoadReport counts;

  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const std::string_view view = trim(text);
    if (view.empty()) continue;
    ++counts.raw_rows;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = view.find(',', start);
      fields.push_back(trim(view.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != kRawColumns) {
      fail(source, line, "expected 14 columns, found " + std::to_string(fields.size()));
    }
    bool missing = false;
    for (auto f : fields) missing = missing || f == "?";
    if (missing) {
      ++counts.dropped_missing;
      continue;
    }

    double raw[kRawColumns];
    for (std::size_t j = 0; j < kRawColumns; ++j) raw[j] = parse_number(fields[j], source, line);

    const int cp = parse_level(raw[kCp], {1, 2, 3, 4}, "cp", source, line);
    const int restecg = parse_level(raw[kRestecg], {0, 1, 2}, "restecg", source, line);
    const int slope = parse_level(raw[kSlope], {1, 2, 3}, "slope", source, line);
    const int thal = parse_level(raw[kThal], {3, 6, 7}, "thal", source, line);
    if (raw[kNum] < 0.0) fail(source, line, "negative num");

    const double encoded[] = {raw[kSex],     raw[kCa],       raw[kTrestbps],   raw[kAge],
                              raw[kChol],    raw[kFbs],      raw[kThalach],    raw[kExang],
                              raw[kOldpeak], double(cp == 2), double(cp == 3), double(cp == 4),
                              double(restecg == 1), double(restecg == 2), double(slope == 2),
                              double(slope == 3),   double(thal == 6),    double(thal == 7),
                              1.0};
    rows.insert(rows.end(), encoded, encoded + d);
    response.push_back(raw[kNum] > 0.0 ? 1.0 : 0.0);
  }

  counts.kept_rows = response.size();
  if (report) *report = counts;

  Dataset data;
  const auto n = static_cast<Eigen::Index>(response.size());
  data.X.resize(n, static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(d); ++j) {
      data.X(i, j) = rows[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)];
    }
  }
  data.Y = Eigen::Map<const Eigen::VectorXd>(response.data(), n);
  data.column_names = names;
  if (options.intercept) data.intercept_column = d - 1;
  if (n == 0) throw DataError(source + ": no complete rows");
  data.validate();
  return data;
}

Dataset load_heart_dataset(const std::filesystem::path& path, const HeartLoadOptions& options,
                           HeartLoadReport* report) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file " + path.string());
  return parse_heart_dataset(in, path.string(), options, report);
}

Standardization standardize_columns(Dataset& data) {
  const Eigen::Index n = data.X.rows();
  const Eigen::Index d = data.X.cols();
  Standardization s;
  s.means = Eigen::VectorXd::Zero(d);
  s.scales = Eigen::VectorXd::Ones(d);
  s.intercept_column = data.intercept_column;
  for (Eigen::Index j = 0; j < d; ++j) {
    if (data.intercept_column && static_cast<std::size_t>(j) == *data.intercept_column) continue;
    const double mean = data.X.col(j).mean();
    const double var = (data.X.col(j).array() - mean).square().sum() / static_cast<double>(n);
    if (!(var > 0.0)) continue;
    s.means[j] = mean;
    s.scales[j] = std::sqrt(var);
    data.X.col(j) = (data.X.col(j).array() - mean) / s.scales[j];
  }
  return s;
}

Eigen::VectorXd unstandardize_coefficients(const Eigen::VectorXd& beta, const Standardization& s) {
  if (beta.size() != s.means.size()) throw std::invalid_argument("coefficient size mismatch");
  Eigen::VectorXd out = beta.array() / s.scales.array();
  const double shift = (out.array() * s.means.array()).sum();
  if (shift != 0.0) {
    if (!s.intercept_column) {
      throw std::invalid_argument("centered columns need an intercept to map coefficients back");
    }
    out[static_cast<Eigen::Index>(*s.intercept_column)] -= shift;
  }
  return out;
}

}  // namespace msc
