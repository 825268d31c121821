// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
//
// File emission. Every CSV starts with a "# <schema> v<version>" line; reals
// are printed with 17 significant digits so files round-trip exactly.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"
#include "msc/engine.hpp"

namespace msc::cli {

inline constexpr const char* kEstimatesSchema = "msc-estimates v1";
inline constexpr const char* kExcursionsSchema = "msc-excursions v1";
inline constexpr const char* kPlanSchema = "msc-plan v1";
inline constexpr const char* kCompareSchema = "msc-compare v1";
inline constexpr const char* kSelftestSchema = "msc-pg-selftest v1";
inline constexpr const char* kDiagnosticsSchema = "msc-diagnostics v1";

std::string format_real(double x);

class CsvTable {
 public:
  CsvTable(std::string schema, std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::string schema_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

CsvTable estimates_table(const std::vector<std::string>& names, const std::vector<double>& estimates,
                         const std::vector<double>& stderrs);

CsvTable estimates_table(const std::vector<std::string>& names, const Eigen::VectorXd& estimates,
                         const Eigen::VectorXd& stderrs);

CsvTable excursions_table(const std::vector<std::uint64_t>& taus);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

void ensure_directory(const std::filesystem::path& dir);

}  // namespace msc::cli
