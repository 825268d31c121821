// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include "msc/logit_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "msc/distributions.hpp"
#include "msc/errors.hpp"
#include "msc/linalg.hpp"
#include "msc/polya_gamma.hpp"

namespace msc {
namespace {

double softplus(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

Eigen::VectorXd sigmoid(const Eigen::VectorXd& t) {
  Eigen::VectorXd out(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) out[i] = sigmoid(t[i]);
  return out;
}

}  // namespace

double neg_log_lik(const Eigen::VectorXd& beta, const Dataset& data) {
  const Eigen::VectorXd eta = data.X * beta;
  double total = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) total += softplus(eta[i]) - data.Y[i] * eta[i];
  return total;
}

Eigen::VectorXd neg_log_lik_gradient(const Eigen::VectorXd& beta, const Dataset& data) {
  return data.X.transpose() * (sigmoid(Eigen::VectorXd(data.X * beta)) - data.Y);
}

Eigen::MatrixXd neg_log_lik_hessian(const Eigen::VectorXd& beta, const Dataset& data) {
  const Eigen::VectorXd s = sigmoid(Eigen::VectorXd(data.X * beta));
  const Eigen::VectorXd w = s.array() * (1.0 - s.array());
  return data.X.transpose() * w.asDiagonal() * data.X;
}

Eigen::VectorXd neg_log_lik_hessian_vector(const Eigen::VectorXd& beta, const Eigen::VectorXd& v,
                                           const Dataset& data) {
  const Eigen::VectorXd s = sigmoid(Eigen::VectorXd(data.X * beta));
  const Eigen::VectorXd w = s.array() * (1.0 - s.array());
  const Eigen::VectorXd xv = data.X * v;
  return data.X.transpose() * (w.array() * xv.array()).matrix();
}

LogitPosterior::LogitPosterior(Dataset data, Eigen::MatrixXd sigma, double h, double map_tolerance)
    : data_(std::move(data)), sigma_(std::move(sigma)), h_(h), map_tolerance_(map_tolerance) {
  data_.validate();
  if (!(h_ > 0.0 && h_ <= 0.5)) throw std::invalid_argument("h must lie in (0, 1/2]");
  if (!(map_tolerance_ > 0.0)) throw std::invalid_argument("MAP tolerance must be positive");
  const auto d = static_cast<Eigen::Index>(data_.d());
  if (sigma_.rows() != d || sigma_.cols() != d) {
    throw std::invalid_argument("prior covariance does not match the design width");
  }
  if (!sigma_.isApprox(sigma_.transpose(), 1e-12)) throw NumericError("prior covariance is not symmetric");
  const auto llt = spd_factor(sigma_, "prior covariance");
  sigma_chol_ = llt.matrixL();
  sigma_inv_ = llt.solve(Eigen::MatrixXd::Identity(d, d));
  sigma_inv_ = 0.5 * (sigma_inv_ + sigma_inv_.transpose());

  const auto proposal = spd_factor((0.5 + h_) * sigma_, "proposal covariance");
  proposal_chol_ = proposal.matrixL();
  proposal_log_norm_ = -proposal_chol_.diagonal().array().log().sum() -
                       0.5 * static_cast<double>(d) * std::log(2.0 * std::numbers::pi);
  score_ = data_.X.transpose() * (data_.Y.array() - 0.5).matrix();
}

double LogitPosterior::log_unnorm(const Eigen::VectorXd& beta) const {
  return -neg_log_lik(beta, data_) - 0.5 * beta.dot(sigma_inv_ * beta);
}

Eigen::VectorXd LogitPosterior::objective_gradient(const Eigen::VectorXd& beta) const {
  return neg_log_lik_gradient(beta, data_) + sigma_inv_ * beta;
}

Eigen::MatrixXd LogitPosterior::objective_hessian(const Eigen::VectorXd& beta) const {
  return neg_log_lik_hessian(beta, data_) + sigma_inv_;
}

const Eigen::VectorXd& LogitPosterior::mode() const {
  std::call_once(mode_once_, [this] { mode_ = map_estimate(*this, map_tolerance_); });
  return mode_;
}

Eigen::VectorXd LogitPosterior::proposal_sample(RngStream& stream) const {
  Eigen::VectorXd z(static_cast<Eigen::Index>(dimension()));
  fill_std_normal(stream, z);
  return mode() + proposal_chol_.triangularView<Eigen::Lower>() * z;
}

double LogitPosterior::proposal_log_density(const Eigen::VectorXd& beta) const {
  const Eigen::VectorXd u =
      proposal_chol_.triangularView<Eigen::Lower>().solve(Eigen::VectorXd(beta - mode()));
  return proposal_log_norm_ - 0.5 * u.squaredNorm();
}

double LogitPosterior::proposal_log_weight(const Eigen::VectorXd& beta) const {
  return log_unnorm(beta) - proposal_log_density(beta);
}

Eigen::VectorXd map_estimate(const LogitPosterior& posterior, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("MAP tolerance must be positive");
  const auto d = static_cast<Eigen::Index>(posterior.dimension());
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(d);
  auto objective = [&](const Eigen::VectorXd& b) { return -posterior.log_unnorm(b); };

  double value = objective(beta);
  for (int it = 0; it < kMapIterationCap; ++it) {
    const Eigen::VectorXd grad = posterior.objective_gradient(beta);
    if (grad.norm() <= tol) return beta;
    Eigen::LLT<Eigen::MatrixXd> llt(posterior.objective_hessian(beta));
    if (llt.info() != Eigen::Success) throw NumericError("MAP Hessian is not positive-definite");
    const Eigen::VectorXd step = llt.solve(grad);

    // Backtrack until the objective does not increase. Once the Newton
    // decrement is at rounding level the objective can no longer rank trial
    // points, so the full step is taken unconditionally.
    double t = 1.0;
    Eigen::VectorXd trial = beta - step;
    double trial_value = objective(trial);
    const bool quadratic_region = grad.dot(step) <= 1e-10 * (1.0 + std::abs(value));
    while (!quadratic_region && trial_value > value && t > 1e-12) {
      t *= 0.5;
      trial = beta - t * step;
      trial_value = objective(trial);
    }
    beta = trial;
    value = trial_value;
  }
  if (posterior.objective_gradient(beta).norm() <= tol) return beta;
  throw NumericError("MAP Newton iterations exceeded the cap of " + std::to_string(kMapIterationCap));
}

double log_unnorm_posterior(const Eigen::VectorXd& beta, const LogitPosterior& posterior) {
  return posterior.log_unnorm(beta);
}

Eigen::VectorXd pg_gibbs_step(RngStream& stream, const Eigen::VectorXd& beta,
                              const LogitPosterior& posterior, GibbsAux* aux) {
  const Dataset& data = posterior.data();
  const Eigen::Index n = data.X.rows();
  const Eigen::Index d = data.X.cols();

  const Eigen::VectorXd eta = data.X * beta;
  Eigen::VectorXd omega(n);
  for (Eigen::Index i = 0; i < n; ++i) omega[i] = sample_polya_gamma(stream, std::abs(eta[i]));

  Eigen::MatrixXd precision = posterior.sigma_inverse();
  precision.selfadjointView<Eigen::Lower>().rankUpdate(data.X.transpose() * omega.cwiseSqrt().asDiagonal());
  Eigen::LLT<Eigen::MatrixXd> llt(precision);  // reads the lower triangle only
  if (llt.info() != Eigen::Success) {
    throw NumericError("Gibbs precision X^T Omega X + Sigma^{-1} is not positive-definite");
  }
  const Eigen::VectorXd mean = llt.solve(posterior.centered_score());
  Eigen::VectorXd z(d);
  fill_std_normal(stream, z);
  // Cov = (L L^T)^{-1} = L^{-T} L^{-1}, so L^{-T} z has the right covariance.
  Eigen::VectorXd next = mean + llt.matrixU().solve(z);
  if (aux) aux->omega = std::move(omega);
  return next;
}

bool logit_in_C(const Eigen::VectorXd& beta, double L, double r) { return beta.squaredNorm() <= r * L; }

LogitModel::LogitModel(std::shared_ptr<const LogitPosterior> posterior, double r)
    : posterior_(std::move(posterior)), r_(r) {
  if (!posterior_) throw std::invalid_argument("null posterior");
  const Dataset& data = posterior_->data();
  constants_ = bounds::pg_constants(data.X, data.Y, posterior_->sigma(), posterior_->h(), r_);
  drift_ = constants_.drift();
}

}  // namespace msc
