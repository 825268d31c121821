// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace msc {

/// Binary-response regression data.
struct Dataset {
  Eigen::MatrixXd X;  ///< n x d design
  Eigen::VectorXd Y;  ///< entries in {0, 1}
  std::vector<std::string> column_names;
  std::optional<std::size_t> intercept_column;

  std::size_t n() const noexcept { return static_cast<std::size_t>(X.rows()); }
  std::size_t d() const noexcept { return static_cast<std::size_t>(X.cols()); }

  /// Throws DataError on non-finite entries, non-binary Y or empty shapes.
  void validate() const;
};

struct HeartLoadOptions {
  bool intercept = true;
};

struct HeartLoadReport {
  std::size_t raw_rows = 0;
  std::size_t dropped_missing = 0;
  std::size_t kept_rows = 0;
};

/// Design columns produced by the Cleveland loader, in order. Nominal
/// attributes (cp, restecg, slope, thal) are one-hot encoded dropping the
/// first level; ca stays numeric; the intercept comes last.
const std::vector<std::string>& heart_column_names(bool intercept = true);

/// Covariate count reported in published analyses, for comparison against the encoding.
inline constexpr std::size_t kReportedHeartCovariates = 21;

/// Parses the 14-column processed Cleveland layout (age, sex, cp, trestbps,
/// chol, fbs, restecg, thalach, exang, oldpeak, slope, ca, thal, num). Rows
/// containing "?" are dropped; the response is 1{num > 0}. Throws DataError
/// naming `source` and the line number on malformed rows.
Dataset parse_heart_dataset(std::istream& in, const std::string& source,
                            const HeartLoadOptions& options = {}, HeartLoadReport* report = nullptr);

/// parse_heart_dataset on a file; DataError if it cannot be opened.
Dataset load_heart_dataset(const std::filesystem::path& path, const HeartLoadOptions& options = {},
                           HeartLoadReport* report = nullptr);

/// Column-wise z-scoring, recorded so coefficients can be mapped back.
struct Standardization {
  Eigen::VectorXd means;   ///< zero for untouched columns
  Eigen::VectorXd scales;  ///< one for untouched columns
  std::optional<std::size_t> intercept_column;
};

/// z-scores every non-intercept column with positive spread, in place.
Standardization standardize_columns(Dataset& data);

/// Maps coefficients fitted on standardized columns to the original scale.
/// Requires an intercept column whenever any mean was subtracted.
Eigen::VectorXd unstandardize_coefficients(const Eigen::VectorXd& beta, const Standardization& s);

}  // namespace msc
