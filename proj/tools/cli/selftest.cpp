// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include "cli/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "msc/distributions.hpp"
#include "msc/parallel.hpp"
#include "msc/polya_gamma.hpp"

namespace msc::cli {
namespace {

class SeriesSampler {
 public:
  SeriesSampler(double b, std::size_t terms) : denom_(terms) {
    const double shift = b * b / (4.0 * std::numbers::pi * std::numbers::pi);
    for (std::size_t k = 1; k <= terms; ++k) {
      const double c = static_cast<double>(k) - 0.5;
      denom_[k - 1] = c * c + shift;
    }
    const std::size_t far = terms * 64;
    for (std::size_t k = terms + 1; k <= far; ++k) {
      const double c = static_cast<double>(k) - 0.5;
      tail_ += 1.0 / (c * c + shift);
    }
    tail_ += 1.0 / static_cast<double>(far);
  }

  double operator()(RngStream& stream) const {
    double s = tail_;
    for (double d : denom_) s += sample_exponential(stream) / d;
    return s / (2.0 * std::numbers::pi * std::numbers::pi);
  }

 private:
  std::vector<double> denom_;
  double tail_ = 0.0;
};

}  // namespace

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical_value(double level, std::size_t n, std::size_t m) {
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return std::sqrt(-0.5 * std::log(level / 2.0)) * std::sqrt((nn + mm) / (nn * mm));
}

std::vector<SelftestRow> pg_selftest(const SelftestSection& section, std::uint64_t seed,
                                     std::size_t workers) {
  std::vector<SelftestRow> rows(section.b.size());
  parallel_for(rows.size(), workers, [&](std::size_t k) {
    const double b = section.b[k];
    const std::size_t n = section.draws;
    RngStream exact_stream(seed, "pg-selftest", k);
    RngStream oracle_stream(seed, "pg-oracle", k);
    const SeriesSampler oracle(b, section.oracle_terms);
    std::vector<double> exact(n);
    std::vector<double> reference(n);
    double sum = 0.0;
    for (auto& x : exact) {
      x = sample_polya_gamma(exact_stream, b);
      sum += x;
    }
    for (auto& x : reference) x = oracle(oracle_stream);

    SelftestRow& row = rows[k];
    row.b = b;
    row.mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double x : exact) ss += (x - row.mean) * (x - row.mean);
    row.mean_stderr = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    row.expected_mean = polya_gamma_mean(b);
    row.ks_statistic = two_sample_ks(exact, reference);
    row.ks_critical = ks_critical_value(section.ks_level, n, n);
    row.passed = row.ks_statistic < row.ks_critical;
  });
  return rows;
}

}  // namespace msc::cli
