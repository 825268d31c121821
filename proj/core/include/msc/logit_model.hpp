// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <mutex>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "msc/bounds.hpp"
#include "msc/engine.hpp"
#include "msc/heart_data.hpp"

namespace msc {

/// l_n(beta) = sum_i softplus(x_i^T beta) - y_i x_i^T beta.
double neg_log_lik(const Eigen::VectorXd& beta, const Dataset& data);
Eigen::VectorXd neg_log_lik_gradient(const Eigen::VectorXd& beta, const Dataset& data);
/// X^T diag(s (1 - s)) X with s = sigmoid(X beta).
Eigen::MatrixXd neg_log_lik_hessian(const Eigen::VectorXd& beta, const Dataset& data);
Eigen::VectorXd neg_log_lik_hessian_vector(const Eigen::VectorXd& beta, const Eigen::VectorXd& v,
                                           const Dataset& data);

inline constexpr double kDefaultMapTolerance = 1e-8;
inline constexpr int kMapIterationCap = 100;

/// Bayesian logistic regression with a N(0, Sigma) prior, together with the
/// Gaussian importance proposal N(beta*, (1/2 + h) Sigma) centered at the
/// posterior mode. Immutable after construction apart from the lazily
/// computed mode, which is initialized once under a lock.
class LogitPosterior {
 public:
  /// Throws NumericError if Sigma is not SPD, std::invalid_argument if h is
  /// outside (0, 1/2], DataError if the dataset is invalid.
  LogitPosterior(Dataset data, Eigen::MatrixXd sigma, double h,
                 double map_tolerance = kDefaultMapTolerance);

  const Dataset& data() const noexcept { return data_; }
  const Eigen::MatrixXd& sigma() const noexcept { return sigma_; }
  const Eigen::MatrixXd& sigma_inverse() const noexcept { return sigma_inv_; }
  double h() const noexcept { return h_; }
  std::size_t dimension() const noexcept { return data_.d(); }

  /// -l_n(beta) - beta^T Sigma^{-1} beta / 2.
  double log_unnorm(const Eigen::VectorXd& beta) const;

  /// Gradient and Hessian of the negated log posterior (the MAP objective).
  Eigen::VectorXd objective_gradient(const Eigen::VectorXd& beta) const;
  Eigen::MatrixXd objective_hessian(const Eigen::VectorXd& beta) const;

  /// X^T (Y - 1/2).
  const Eigen::VectorXd& centered_score() const noexcept { return score_; }

  /// Posterior mode, computed by Newton's method on first use.
  const Eigen::VectorXd& mode() const;

  Eigen::VectorXd proposal_sample(RngStream& stream) const;
  /// Normalized log density of the proposal.
  double proposal_log_density(const Eigen::VectorXd& beta) const;
  /// log_unnorm(beta) - proposal_log_density(beta).
  double proposal_log_weight(const Eigen::VectorXd& beta) const;

  /// Lower Cholesky factor of Sigma.
  const Eigen::MatrixXd& sigma_factor() const noexcept { return sigma_chol_; }

 private:
  Dataset data_;
  Eigen::MatrixXd sigma_;
  Eigen::MatrixXd sigma_inv_;
  Eigen::MatrixXd sigma_chol_;
  Eigen::MatrixXd proposal_chol_;
  double proposal_log_norm_ = 0.0;
  double h_;
  double map_tolerance_;
  Eigen::VectorXd score_;

  mutable std::once_flag mode_once_;
  mutable Eigen::VectorXd mode_;
};

/// Newton iterations with backtracking on l_n + beta^T Sigma^{-1} beta / 2,
/// stopped when the gradient norm falls to `tol`. Throws NumericError when
/// the Hessian fails to factor or after kMapIterationCap iterations.
Eigen::VectorXd map_estimate(const LogitPosterior& posterior, double tol = kDefaultMapTolerance);

double log_unnorm_posterior(const Eigen::VectorXd& beta, const LogitPosterior& posterior);

/// The auxiliary Pólya-Gamma block of one Gibbs sweep.
struct GibbsAux {
  Eigen::VectorXd omega;
};

/// One sweep of the Pólya-Gamma Gibbs sampler: omega_i ~ PG(1, |x_i^T beta|),
/// then beta' ~ N(mu(omega), Sigma(omega)) with Sigma(omega)^{-1} =
/// X^T Omega X + Sigma^{-1} and mu(omega) = Sigma(omega) X^T (Y - 1/2), using
/// one Cholesky factorization of the precision.
Eigen::VectorXd pg_gibbs_step(RngStream& stream, const Eigen::VectorXd& beta,
                              const LogitPosterior& posterior, GibbsAux* aux = nullptr);

/// |beta|^2 <= r L (closed).
bool logit_in_C(const Eigen::VectorXd& beta, double L, double r);

/// The marginal beta-chain of the Gibbs sampler as an MSC model, with
/// V(beta) = 1 + |beta|^2 and C_r = {|beta|^2 <= r L}.
class LogitModel final : public ModelBundle {
 public:
  LogitModel(std::shared_ptr<const LogitPosterior> posterior, double r);

  const LogitPosterior& posterior() const noexcept { return *posterior_; }
  const bounds::PgConstants& constants() const noexcept { return constants_; }
  double r() const noexcept { return r_; }

  std::size_t dimension() const override { return posterior_->dimension(); }
  State propose(RngStream& stream) const override { return posterior_->proposal_sample(stream); }
  double log_weight(const State& beta) const override { return posterior_->proposal_log_weight(beta); }
  State kernel_step(RngStream& stream, const State& beta) const override {
    return pg_gibbs_step(stream, beta, *posterior_);
  }
  double f_value(const State& beta) const override { return 1.0 + beta.squaredNorm(); }
  DriftSpec drift() const override { return drift_; }
  bool in_return_set(const State& beta) const override { return logit_in_C(beta, constants_.L, r_); }

 private:
  std::shared_ptr<const LogitPosterior> posterior_;
  double r_;
  bounds::PgConstants constants_;
  DriftSpec drift_;
};

}  // namespace msc
