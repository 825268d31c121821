// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "msc/engine.hpp"

namespace msc::bounds {

/// Inputs of the mean-squared-error bounds under a geometric drift (f = V).
struct GeometricBoundInput {
  double gamma = 0.0;
  double K = 0.0;
  double R = 0.0;
  std::uint64_t M = 0;
  std::uint64_t N = 0;
  double w2 = 1.0;       ///< integral of w against the target, or its estimate
  double sup_V_C = 0.0;  ///< sup of V over C; R when C is the V-sublevel set

  /// Throws std::invalid_argument on R <= K/(1-gamma), w2 < 1, sup_V_C > R,
  /// or zero sample sizes.
  void validate() const;
};

/// Inputs of the concentration bounds under a multiplicative drift.
struct MultBoundInput {
  double gamma = 0.0;
  double K = 0.0;
  double R = 0.0;
  double B_R = 0.0;
  double w_star = 1.0;  ///< sup of the importance weight
  double eps = 0.0;
  std::uint64_t M = 0;
  std::uint64_t N = 0;

  void validate() const;
};

/// gamma + K / R. Requires R > K / (1 - gamma).
double gamma_R(double gamma, double K, double R);

/// A_R for f = V: gamma * sup_V_C + 2K - 1.
double a_r_constant(const GeometricBoundInput& in);

/// Mean squared bias of the kernel-smoothed importance estimate:
/// 4 A^2 w2 / (N (1-gR)^2) - 2 A^2 / (N (1-gR)^2).
double bias_bound(const GeometricBoundInput& in);

/// The first term of bias_bound alone, the piece that enters mse_bound.
double bias_bound_leading(const GeometricBoundInput& in);

/// Conditional variance given the atoms: ((R+K)/M) * (gR/2 / (1 - gR/2))^2.
double variance_bound(const GeometricBoundInput& in);

/// (gR sqrt(R+K) / (sqrt(M)(2-gR)) + 2 A sqrt(w2) / (sqrt(N)(1-gR)))^2.
double mse_bound(const GeometricBoundInput& in);

/// (6.25 gR R + 12.5 K) / (M (1-gR)^2). Valid only when
/// N/M >= (gamma R + 2K) w2; otherwise std::invalid_argument names the ratio.
double simplified_mse_bound(const GeometricBoundInput& in);

/// Smallest N/M ratio for which simplified_mse_bound applies.
double simplified_bound_ratio(const GeometricBoundInput& in);

/// 4 exp(-N eps^2 (1-gR)^2 / (2 e^{2 B_R} w_*^2)).
double concentration_bias(const MultBoundInput& in);

/// 2 exp(-M eps^2 (1-gR)^2 / (9 e^{2 B_R})).
double concentration_sum(const MultBoundInput& in);

/// 6 exp(-eps^2 (1-gR)^2 min(2M/9, N/w_*^2) / (8 e^{2 B_R})).
double concentration_total(const MultBoundInput& in);

/// Upper bound on the integral of f against the target: K / (1 - gamma).
double stationary_f_bound(double gamma, double K);

/// Bound on E_x[sum_{k<=tau} f(X_k)] for x in C:
/// (V(x) - 1 - (1-gamma) f(x) + 2K) / (1 - gR).
double excursion_sum_bound(const DriftSpec& drift, double v_at_x, double f_at_x);

/// Supremum over C of excursion_sum_bound for f = V: A_R / (1 - gR).
double excursion_sum_bound_sup(const DriftSpec& drift, double sup_V_C);

struct SamplePlan {
  std::uint64_t N = 0;
  std::uint64_t M = 0;
};

/// Smallest (N, M) for which Markov's inequality applied to mse_bound gives
/// P(|error| >= eps) <= delta, spending half of the budget eps^2 delta on each
/// term: M = ceil(4 a^2 / (delta eps^2)) with a = gR sqrt(R+K)/(2-gR), and
/// N = ceil(4 b^2 / (delta eps^2)) with b = 2 A sqrt(w2)/(1-gR).
SamplePlan plan_sizes(double eps, double delta, double gamma, double K, double R, double w2,
                      double sup_V_C);

/// (1/(2 sqrt(2h)) + sqrt(h/2))^d, the chi-square factor of a Gaussian
/// proposal inflated by (1/2 + h).
double proposal_chi2_factor(double h, std::size_t d);
double log_proposal_chi2_factor(double h, std::size_t d);

struct ArConstants {
  double gamma = 0.0;
  double K = 0.0;
  double R = 0.0;
  double w2 = 1.0;
  double sup_V_C = 0.0;

  DriftSpec drift() const { return {gamma, K, R, true}; }
};

/// Drift and proposal constants of the AR(1) model with V(x) = 1 + |x|^2
/// and C_r = {|x|^2 <= r d}.
ArConstants ar_constants(double rho, std::size_t d, double h, double r);

struct PgConstants {
  double L = 0.0;  ///< ||Sigma||_2^2 ||X^T (Y - 1/2)||_2^2
  double r = 0.0;
  double gamma_r = 0.0;
  double R = 0.0;
  double K = 0.0;
  double K_with_trace = 0.0;  ///< 1 + L + tr(Sigma), the one-step bound
  double x_norm_sq = 0.0;     ///< ||X||_2^2
  double lambda_star = 0.0;   ///< ||X^T X||_2 / 4
  double log_W_d = 0.0;
  double W_d = 0.0;
  double log_chi2_bound = 0.0;
  double chi2_bound = 0.0;
  bool valid = false;  ///< false when R <= K (e.g. L = 0)

  /// gamma = 0, K = 1 + L, R = 1 + r L. Throws if !valid.
  DriftSpec drift() const;
};

/// Constants of the Pólya-Gamma Gibbs drift and the Gaussian proposal bound
/// for Bayesian logistic regression. Throws NumericError if Sigma is not SPD.
PgConstants pg_constants(const Eigen::MatrixXd& X, const Eigen::VectorXd& Y,
                         const Eigen::MatrixXd& Sigma, double h, double r);

/// The Pólya-Gamma MSE bound with (2L + 1) W_d in the bias term.
double pg_mse_bound_literal(const PgConstants& pg, std::uint64_t M, std::uint64_t N);

/// mse_bound applied to the Pólya-Gamma drift with w2 = chi2_bound.
double pg_mse_bound_composed(const PgConstants& pg, std::uint64_t M, std::uint64_t N);

}  // namespace msc::bounds
