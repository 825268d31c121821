// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include "msc/baselines.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "msc/distributions.hpp"
#include "msc/errors.hpp"
#include "msc/linalg.hpp"

namespace msc {
namespace {

void check_steps(std::uint64_t steps, std::uint64_t burn_in) {
  if (steps <= burn_in) throw std::invalid_argument("steps must exceed burn_in");
}

}  // namespace

std::uint64_t default_burn_in(std::uint64_t steps) noexcept { return steps / 10; }

BatchMeans::BatchMeans(std::size_t dimension, std::uint64_t n_samples) {
  if (n_samples < 1) throw std::invalid_argument("batch means needs at least one sample");
  batch_count_ = static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<double>(n_samples))));
  batch_size_ = n_samples / batch_count_;
  const auto d = static_cast<Eigen::Index>(dimension);
  total_ = Eigen::VectorXd::Zero(d);
  batch_total_ = Eigen::VectorXd::Zero(d);
  batch_means_ = Eigen::MatrixXd::Zero(d, static_cast<Eigen::Index>(batch_count_));
}

void BatchMeans::push(const Eigen::VectorXd& x) {
  total_ += x;
  const std::uint64_t batch = seen_ / batch_size_;
  ++seen_;
  if (batch >= batch_count_) return;
  batch_total_ += x;
  if (seen_ % batch_size_ == 0) {
    batch_means_.col(static_cast<Eigen::Index>(batch)) = batch_total_ / static_cast<double>(batch_size_);
    batch_total_.setZero();
  }
}

Eigen::VectorXd BatchMeans::mean() const { return total_ / static_cast<double>(seen_); }

Eigen::VectorXd BatchMeans::mcse() const {
  const Eigen::Index d = total_.size();
  if (batch_count_ < 2) return Eigen::VectorXd::Constant(d, std::numeric_limits<double>::infinity());
  const Eigen::VectorXd grand = batch_means_.rowwise().mean();
  const Eigen::VectorXd ss = (batch_means_.colwise() - grand).array().square().rowwise().sum();
  const double b = static_cast<double>(batch_count_);
  const double size = static_cast<double>(batch_size_);
  // Long-run variance size * s^2_batch; the mean's error divides by the
  // number of batched samples.
  return (size * ss.array() / (b - 1.0) / (b * size)).sqrt();
}

ChainRunResult run_single_chain_gibbs(const LogitPosterior& posterior, std::uint64_t steps,
                                      std::uint64_t burn_in, const Eigen::VectorXd& start,
                                      std::uint64_t master_seed, const ChainObserver& observer) {
  check_steps(steps, burn_in);
  if (start.size() != static_cast<Eigen::Index>(posterior.dimension())) {
    throw std::invalid_argument("start has the wrong dimension");
  }
  RngStream stream(master_seed, "gibbs", 0);
  BatchMeans stats(posterior.dimension(), steps - burn_in);
  Eigen::VectorXd beta = start;
  for (std::uint64_t t = 0; t < steps; ++t) {
    beta = pg_gibbs_step(stream, beta, posterior);
    if (t < burn_in) continue;
    stats.push(beta);
    if (observer) observer(beta);
  }
  ChainRunResult out;
  out.mean = stats.mean();
  out.mcse = stats.mcse();
  out.n_steps = steps;
  out.burn_in = burn_in;
  out.batches = stats.batches();
  return out;
}

ChainRunResult run_rwm(const LogitPosterior& posterior, std::uint64_t steps, std::uint64_t burn_in,
                       const Eigen::VectorXd& start, std::uint64_t master_seed,
                       const RwmOptions& options, const ChainObserver& observer) {
  check_steps(steps, burn_in);
  const auto d = static_cast<Eigen::Index>(posterior.dimension());
  if (start.size() != d) throw std::invalid_argument("start has the wrong dimension");
  const double scale = options.scale_override.value_or(2.38 / std::sqrt(static_cast<double>(d)));
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw std::invalid_argument("RWM scale must be nonnegative");

  // factor * z has covariance F F^T for the chosen shape.
  Eigen::MatrixXd factor;
  bool upper = false;
  if (options.shape == RwmOptions::Shape::kPrior) {
    factor = std::sqrt(0.5 + posterior.h()) * posterior.sigma_factor();
  } else {
    const auto llt = spd_factor(posterior.objective_hessian(posterior.mode()), "posterior curvature");
    factor = llt.matrixU();  // H = U^T U, so H^{-1} = U^{-1} U^{-T}
    upper = true;
  }

  RngStream stream(master_seed, "rwm", 0);
  BatchMeans stats(posterior.dimension(), steps - burn_in);
  Eigen::VectorXd beta = start;
  double log_target = posterior.log_unnorm(beta);
  std::uint64_t accepted = 0;
  Eigen::VectorXd z(d);
  for (std::uint64_t t = 0; t < steps; ++t) {
    fill_std_normal(stream, z);
    const Eigen::VectorXd increment =
        upper ? Eigen::VectorXd(factor.triangularView<Eigen::Upper>().solve(z))
              : Eigen::VectorXd(factor.triangularView<Eigen::Lower>() * z);
    const Eigen::VectorXd proposal = beta + scale * increment;
    const double proposal_log_target = posterior.log_unnorm(proposal);
    const double log_u = std::log(stream.uniform_open());
    if (log_u < proposal_log_target - log_target) {
      beta = proposal;
      log_target = proposal_log_target;
      ++accepted;
    }
    if (t < burn_in) continue;
    stats.push(beta);
    if (observer) observer(beta);
  }
  ChainRunResult out;
  out.mean = stats.mean();
  out.mcse = stats.mcse();
  out.n_steps = steps;
  out.burn_in = burn_in;
  out.batches = stats.batches();
  out.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(steps);
  return out;
}

}  // namespace msc
