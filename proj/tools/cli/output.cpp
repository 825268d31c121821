// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include "cli/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cli/config.hpp"

namespace msc::cli {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvTable::CsvTable(std::string schema, std::vector<std::string> header)
    : schema_(std::move(schema)), header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::logic_error("CSV row width does not match the header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::ostringstream out;
  out << "# " << schema_ << '\n';
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out.str();
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << str();
}

CsvTable estimates_table(const std::vector<std::string>& names, const std::vector<double>& estimates,
                         const std::vector<double>& stderrs) {
  CsvTable t(kEstimatesSchema, {"function", "estimate", "stderr"});
  for (std::size_t j = 0; j < names.size(); ++j) {
    t.add_row({names[j], format_real(estimates[j]), format_real(stderrs[j])});
  }
  return t;
}

CsvTable estimates_table(const std::vector<std::string>& names, const Eigen::VectorXd& estimates,
                         const Eigen::VectorXd& stderrs) {
  return estimates_table(names, std::vector<double>(estimates.begin(), estimates.end()),
                         std::vector<double>(stderrs.begin(), stderrs.end()));
}

CsvTable excursions_table(const std::vector<std::uint64_t>& taus) {
  CsvTable t(kExcursionsSchema, {"chain", "tau"});
  for (std::size_t m = 0; m < taus.size(); ++m) t.add_row({std::to_string(m), std::to_string(taus[m])});
  return t;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
}

}  // namespace msc::cli
