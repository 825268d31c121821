// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "cli/config.hpp"

namespace msc::cli {

struct SelftestRow {
  double b = 0.0;
  double mean = 0.0;
  double mean_stderr = 0.0;
  double expected_mean = 0.0;
  double ks_statistic = 0.0;
  double ks_critical = 0.0;
  bool passed = false;
};

/// Exact PG(1, b) draws against a truncated sum-of-exponentials series with
/// the expected tail added back. Rows are in the order of `section.b`.
std::vector<SelftestRow> pg_selftest(const SelftestSection& section, std::uint64_t seed,
                                     std::size_t workers);

double two_sample_ks(std::vector<double> a, std::vector<double> b);

double ks_critical_value(double level, std::size_t n, std::size_t m);

}  // namespace msc::cli
