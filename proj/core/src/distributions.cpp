// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include "msc/distributions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace msc {
namespace {

void validate_weights(std::span<const double> weights, double sum_tolerance) {
  if (weights.empty()) throw std::invalid_argument("categorical weights are empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("categorical weight " + std::to_string(i) +
                                  " is negative or non-finite");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > sum_tolerance) {
    throw std::invalid_argument("categorical weights sum to " + std::to_string(sum) +
                                ", expected 1");
  }
}

}  // namespace

double sample_std_normal(RngStream& stream) noexcept {
  const double u1 = stream.uniform_open();
  const double u2 = stream.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void fill_std_normal(RngStream& stream, Eigen::Ref<Eigen::VectorXd> out) noexcept {
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = sample_std_normal(stream);
}

double sample_exponential(RngStream& stream) noexcept { return -std::log(stream.uniform_open()); }

Eigen::VectorXd sample_mvn(RngStream& stream, const Eigen::VectorXd& mean,
                           const Eigen::MatrixXd& chol_factor) {
  const Eigen::Index d = mean.size();
  if (chol_factor.rows() != d || chol_factor.cols() != d) {
    throw std::invalid_argument("sample_mvn: factor dimensions do not match the mean");
  }
  if (!chol_factor.allFinite()) throw std::invalid_argument("sample_mvn: non-finite factor entry");
  Eigen::VectorXd z(d);
  fill_std_normal(stream, z);
  return mean + chol_factor.triangularView<Eigen::Lower>() * z;
}

AliasTable::AliasTable(std::span<const double> weights, double sum_tolerance) {
  validate_weights(weights, sum_tolerance);
  const std::size_t n = weights.size();
  prob_.assign(n, 0.0);
  alias_.assign(n, 0);

  double total = 0.0;
  for (double w : weights) total += w;
  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i) scaled[i] = weights[i] * static_cast<double>(n) / total;

  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (std::uint32_t i : large) {
    prob_[i] = 1.0;
    alias_[i] = i;
  }
  std::uint32_t heaviest = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (weights[i] > weights[heaviest]) heaviest = static_cast<std::uint32_t>(i);
  }
  for (std::uint32_t i : small) {
    prob_[i] = weights[i] > 0.0 ? 1.0 : 0.0;
    alias_[i] = weights[i] > 0.0 ? i : heaviest;
  }
}

std::size_t AliasTable::sample(RngStream& stream) const noexcept {
  const double u = stream.uniform() * static_cast<double>(prob_.size());
  std::size_t i = static_cast<std::size_t>(u);
  if (i >= prob_.size()) i = prob_.size() - 1;
  const double frac = u - static_cast<double>(i);
  return frac < prob_[i] ? i : alias_[i];
}

std::size_t sample_categorical(RngStream& stream, std::span<const double> weights) {
  validate_weights(weights, 1e-9);
  const double u = stream.uniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = i;
    cumulative += weights[i];
    if (u < cumulative) return i;
  }
  return last_positive;
}

}  // namespace msc
