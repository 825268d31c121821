// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "msc/errors.hpp"
#include "msc/heart_data.hpp"

namespace {

const std::filesystem::path kHeartFile = std::filesystem::path(MSC_DATA_DIR) / "processed.cleveland.data";

struct RawCounts {
  std::size_t lines = 0;
  std::size_t with_missing = 0;
  std::size_t positive_complete = 0;
};

// Line-count and substring oracle over the raw file.
RawCounts count_raw(const std::filesystem::path& path) {
  std::ifstream in(path);
  RawCounts c;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++c.lines;
    if (line.find('?') != std::string::npos) {
      ++c.with_missing;
      continue;
    }
    const std::string last = line.substr(line.rfind(',') + 1);
    if (std::stod(last) > 0.0) ++c.positive_complete;
  }
  return c;
}

const std::string kRowA = "63.0,1.0,1.0,145.0,233.0,1.0,2.0,150.0,0.0,2.3,3.0,0.0,6.0,0";
const std::string kRowB = "67.0,1.0,4.0,160.0,286.0,0.0,2.0,108.0,1.0,1.5,2.0,3.0,3.0,2";

}  // namespace

TEST_CASE("processed Cleveland file") {
  REQUIRE(std::filesystem::exists(kHeartFile));
  const RawCounts raw = count_raw(kHeartFile);
  msc::HeartLoadReport report;
  const msc::Dataset data = msc::load_heart_dataset(kHeartFile, {}, &report);
  CHECK(raw.lines == 303);
  CHECK(raw.with_missing == 6);
  CHECK(report.raw_rows == raw.lines);
  CHECK(report.dropped_missing == raw.with_missing);
  CHECK(data.n() == 297);
  CHECK(report.kept_rows == 297);
  CHECK(data.Y.sum() == doctest::Approx(static_cast<double>(raw.positive_complete)));
  CHECK(data.d() == msc::heart_column_names().size());
  CHECK(data.d() == 19);
  CHECK(data.d() != msc::kReportedHeartCovariates);
  REQUIRE(data.intercept_column.has_value());
  CHECK(data.X.col(static_cast<Eigen::Index>(*data.intercept_column)).isOnes());
  CHECK(data.column_names == msc::heart_column_names());
}

TEST_CASE("encoding of a single row") {
  std::istringstream in(kRowA + "\n" + kRowB + "\n");
  const msc::Dataset data = msc::parse_heart_dataset(in, "inline");
  REQUIRE(data.n() == 2);
  const auto& names = data.column_names;
  auto col = [&](const std::string& name) {
    return static_cast<Eigen::Index>(std::find(names.begin(), names.end(), name) - names.begin());
  };
  CHECK(data.X(0, col("age")) == 63.0);
  CHECK(data.X(0, col("oldpeak")) == 2.3);
  CHECK(data.X(0, col("cp=2")) == 0.0);
  CHECK(data.X(0, col("cp=4")) == 0.0);
  CHECK(data.X(1, col("cp=4")) == 1.0);
  CHECK(data.X(0, col("restecg=2")) == 1.0);
  CHECK(data.X(0, col("slope=3")) == 1.0);
  CHECK(data.X(1, col("slope=2")) == 1.0);
  CHECK(data.X(0, col("thal=6")) == 1.0);
  CHECK(data.X(1, col("thal=6")) == 0.0);
  CHECK(data.X(1, col("thal=7")) == 0.0);
  CHECK(data.X(1, col("ca")) == 3.0);
  CHECK(data.Y[0] == 0.0);
  CHECK(data.Y[1] == 1.0);
}

TEST_CASE("file without missing markers keeps every row") {
  std::istringstream in(kRowA + "\n\n" + kRowB + "\n" + kRowA + "\n");
  msc::HeartLoadReport report;
  const msc::Dataset data = msc::parse_heart_dataset(in, "inline", {}, &report);
  CHECK(report.raw_rows == 3);
  CHECK(data.n() == 3);
  CHECK(report.dropped_missing == 0);
}

TEST_CASE("intercept can be omitted") {
  std::istringstream in(kRowA + "\n");
  msc::HeartLoadOptions options;
  options.intercept = false;
  const msc::Dataset data = msc::parse_heart_dataset(in, "inline", options);
  CHECK(data.d() == 18);
  CHECK_FALSE(data.intercept_column.has_value());
}

TEST_CASE("malformed input") {
  SUBCASE("13 columns names the line") {
    std::istringstream in(kRowA + "\n" + "67.0,1.0,4.0,160.0,286.0,0.0,2.0,108.0,1.0,1.5,2.0,3.0,3.0\n");
    CHECK_THROWS_WITH_AS(msc::parse_heart_dataset(in, "bad.data"),
                         "bad.data:2: expected 14 columns, found 13", msc::DataError);
  }
  SUBCASE("unparseable number") {
    std::istringstream in("63.0,1.0,1.0,abc,233.0,1.0,2.0,150.0,0.0,2.3,3.0,0.0,6.0,0\n");
    CHECK_THROWS_WITH_AS(msc::parse_heart_dataset(in, "bad.data"), doctest::Contains("bad.data:1:"),
                         msc::DataError);
  }
  SUBCASE("unknown nominal level") {
    std::istringstream in("63.0,1.0,5.0,145.0,233.0,1.0,2.0,150.0,0.0,2.3,3.0,0.0,6.0,0\n");
    CHECK_THROWS_AS(msc::parse_heart_dataset(in, "bad.data"), msc::DataError);
  }
  SUBCASE("only missing rows") {
    std::istringstream in("63.0,1.0,1.0,145.0,233.0,1.0,2.0,150.0,0.0,2.3,3.0,?,6.0,0\n");
    CHECK_THROWS_AS(msc::parse_heart_dataset(in, "bad.data"), msc::DataError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_WITH_AS(msc::load_heart_dataset("/nonexistent/heart.data"),
                         doctest::Contains("/nonexistent/heart.data"), msc::DataError);
  }
}

TEST_CASE("standardization round trip") {
  msc::Dataset data = msc::load_heart_dataset(kHeartFile);
  const msc::Dataset original = data;
  const auto s = msc::standardize_columns(data);
  for (Eigen::Index j = 0; j < data.X.cols() - 1; ++j) {
    CHECK(std::abs(data.X.col(j).mean()) < 1e-12);
  }
  CHECK(data.X.col(data.X.cols() - 1).isOnes());
  Eigen::VectorXd beta(data.d());
  for (Eigen::Index j = 0; j < beta.size(); ++j) beta[j] = 0.1 * static_cast<double>(j) - 0.7;
  const Eigen::VectorXd back = msc::unstandardize_coefficients(beta, s);
  const Eigen::VectorXd lhs = data.X * beta;
  const Eigen::VectorXd rhs = original.X * back;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
}
