// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include <Eigen/Core>

#include "msc/logit_model.hpp"

namespace msc {

struct ChainRunResult {
  Eigen::VectorXd mean;
  Eigen::VectorXd mcse;  ///< batch-means Monte Carlo standard error
  std::uint64_t n_steps = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t batches = 0;
  std::optional<double> acceptance_rate;  ///< RWM only
};

/// Called with every post-burn-in state.
using ChainObserver = std::function<void(const Eigen::VectorXd&)>;

/// Default burn-in: 10% of the steps.
std::uint64_t default_burn_in(std::uint64_t steps) noexcept;

/// Batch-means estimator: floor(sqrt(n)) non-overlapping batches of equal
/// length (a trailing remainder is dropped from the variance only).
class BatchMeans {
 public:
  BatchMeans(std::size_t dimension, std::uint64_t n_samples);
  void push(const Eigen::VectorXd& x);
  Eigen::VectorXd mean() const;
  Eigen::VectorXd mcse() const;
  std::uint64_t batches() const noexcept { return batch_count_; }

 private:
  std::uint64_t batch_size_;
  std::uint64_t batch_count_;
  std::uint64_t seen_ = 0;
  Eigen::VectorXd total_;
  Eigen::VectorXd batch_total_;
  Eigen::MatrixXd batch_means_;
};

/// Single-chain Pólya-Gamma Gibbs on stream ("gibbs", 0). Requires
/// steps > burn_in.
ChainRunResult run_single_chain_gibbs(const LogitPosterior& posterior, std::uint64_t steps,
                                      std::uint64_t burn_in, const Eigen::VectorXd& start,
                                      std::uint64_t master_seed, const ChainObserver& observer = {});

struct RwmOptions {
  /// Multiplies the proposal factor; nullopt means 2.38 / sqrt(d).
  std::optional<double> scale_override;
  /// Proposal shape: the posterior curvature at the mode (Laplace) or the
  /// importance proposal covariance (1/2 + h) Sigma.
  enum class Shape { kLaplace, kPrior } shape = Shape::kLaplace;
};

/// Random-walk Metropolis on stream ("rwm", 0) with proposal
/// beta + scale * F z, where F F^T is the chosen shape covariance.
ChainRunResult run_rwm(const LogitPosterior& posterior, std::uint64_t steps, std::uint64_t burn_in,
                       const Eigen::VectorXd& start, std::uint64_t master_seed,
                       const RwmOptions& options = {}, const ChainObserver& observer = {});

}  // namespace msc
