// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "msc/bounds.hpp"
#include "msc/engine.hpp"

namespace msc {

/// X_t = rho X_{t-1} + sqrt(1 - rho^2) xi_t on R^d with invariant law N(0, I),
/// importance proposal N(0, (1/2 + h) I) and return set {|x|^2 <= r d}.
struct ArConfig {
  double rho = 0.9;
  std::size_t d = 2;
  double h = 0.49;
  double r = 1.5;

  /// Throws std::invalid_argument unless rho in (0,1), d >= 1, h > 0, r > 1.
  void validate() const;
};

State ar_kernel_step(RngStream& stream, const State& x, const ArConfig& config);

/// log N(x; 0, I) - log N(x; 0, (1/2 + h) I), normalizing constants included.
double ar_log_weight(const State& x, const ArConfig& config);

/// |x|^2 <= r d (closed set).
bool ar_in_C(const State& x, const ArConfig& config);

class ArModel final : public ModelBundle {
 public:
  explicit ArModel(ArConfig config);

  const ArConfig& config() const noexcept { return config_; }
  const bounds::ArConstants& constants() const noexcept { return constants_; }

  std::size_t dimension() const override { return config_.d; }
  State propose(RngStream& stream) const override;
  double log_weight(const State& x) const override { return ar_log_weight(x, config_); }
  State kernel_step(RngStream& stream, const State& x) const override {
    return ar_kernel_step(stream, x, config_);
  }
  double f_value(const State& x) const override { return 1.0 + x.squaredNorm(); }
  DriftSpec drift() const override { return constants_.drift(); }
  bool in_return_set(const State& x) const override { return ar_in_C(x, config_); }

  /// An exact draw from the invariant law N(0, I).
  State sample_invariant(RngStream& stream) const;

 private:
  ArConfig config_;
  bounds::ArConstants constants_;
};

}  // namespace msc
