// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include "msc/ar_model.hpp"

#include <cmath>
#include <stdexcept>

#include "msc/distributions.hpp"

namespace msc {

void ArConfig::validate() const {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0, 1)");
  if (d < 1) throw std::invalid_argument("d must be at least 1");
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("h must be positive");
  if (!(r > 1.0) || !std::isfinite(r)) throw std::invalid_argument("r must exceed 1");
}

State ar_kernel_step(RngStream& stream, const State& x, const ArConfig& config) {
  const double noise = std::sqrt(1.0 - config.rho * config.rho);
  State next(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    next[i] = config.rho * x[i] + noise * sample_std_normal(stream);
  }
  return next;
}

double ar_log_weight(const State& x, const ArConfig& config) {
  // N(0, I) against N(0, s I) with s = 1/2 + h; the 2 pi terms cancel.
  const double s = 0.5 + config.h;
  const double sq = x.squaredNorm();
  return 0.5 * static_cast<double>(x.size()) * std::log(s) - 0.5 * sq + 0.5 * sq / s;
}

bool ar_in_C(const State& x, const ArConfig& config) {
  return x.squaredNorm() <= config.r * static_cast<double>(config.d);
}

ArModel::ArModel(ArConfig config)
    : config_(config),
      constants_((config.validate(), bounds::ar_constants(config.rho, config.d, config.h, config.r))) {}

State ArModel::propose(RngStream& stream) const {
  const double scale = std::sqrt(0.5 + config_.h);
  State x(static_cast<Eigen::Index>(config_.d));
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = scale * sample_std_normal(stream);
  return x;
}

State ArModel::sample_invariant(RngStream& stream) const {
  State x(static_cast<Eigen::Index>(config_.d));
  fill_std_normal(stream, x);
  return x;
}

}  // namespace msc
