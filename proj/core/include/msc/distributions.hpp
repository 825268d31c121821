// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "msc/rng.hpp"

namespace msc {

/// Standard normal via the Box-Muller transform; consumes two uniforms.
double sample_std_normal(RngStream& stream) noexcept;

/// Fills `out` with independent standard normals.
void fill_std_normal(RngStream& stream, Eigen::Ref<Eigen::VectorXd> out) noexcept;

/// Exponential with rate 1.
double sample_exponential(RngStream& stream) noexcept;

/// mean + chol_factor * z with z ~ N(0, I). Only the lower triangle of
/// `chol_factor` is read. Throws std::invalid_argument on non-finite entries or
/// mismatched dimensions.
Eigen::VectorXd sample_mvn(RngStream& stream, const Eigen::VectorXd& mean,
                           const Eigen::MatrixXd& chol_factor);

/// Walker/Vose alias table: O(N) construction, O(1) per draw.
class AliasTable {
 public:
  /// `weights` must be nonnegative and sum to 1 within `sum_tolerance`.
  explicit AliasTable(std::span<const double> weights, double sum_tolerance = 1e-9);

  std::size_t sample(RngStream& stream) const noexcept;
  std::size_t size() const noexcept { return prob_.size(); }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

/// Single categorical draw by inverse CDF. Same preconditions as AliasTable;
/// build an AliasTable instead when drawing repeatedly from one vector.
std::size_t sample_categorical(RngStream& stream, std::span<const double> weights);

}  // namespace msc
