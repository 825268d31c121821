// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include "msc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "msc/errors.hpp"
#include "msc/linalg.hpp"

namespace msc::bounds {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

double gr(const GeometricBoundInput& in) { return gamma_R(in.gamma, in.K, in.R); }

double mult_gr(const MultBoundInput& in) { return gamma_R(in.gamma, in.K, in.R); }

}  // namespace

void GeometricBoundInput::validate() const {
  DriftSpec{gamma, K, R, true}.validate();
  require(M >= 1 && N >= 1, "sample sizes M and N must be positive");
  require(std::isfinite(w2) && w2 >= 1.0, "w2 must be finite and at least 1");
  require(std::isfinite(sup_V_C) && sup_V_C >= 1.0 && sup_V_C <= R,
          "sup_V_C must lie in [1, R] for a geometric drift");
}

void MultBoundInput::validate() const {
  DriftSpec{gamma, K, R, false}.validate();
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
  require(std::isfinite(w_star) && w_star >= 1.0, "w_star must be finite and at least 1");
  require(std::isfinite(B_R), "B_R must be finite");
  require(M >= 1 && N >= 1, "sample sizes M and N must be positive");
}

double gamma_R(double gamma, double K, double R) { return DriftSpec{gamma, K, R, true}.gamma_R(); }

double a_r_constant(const GeometricBoundInput& in) {
  DriftSpec{in.gamma, in.K, in.R, true}.validate();
  return in.gamma * in.sup_V_C + 2.0 * in.K - 1.0;
}

double bias_bound(const GeometricBoundInput& in) {
  in.validate();
  const double a = a_r_constant(in);
  const double g = gr(in);
  const double denom = static_cast<double>(in.N) * (1.0 - g) * (1.0 - g);
  return (4.0 * a * a * in.w2 - 2.0 * a * a) / denom;
}

double bias_bound_leading(const GeometricBoundInput& in) {
  in.validate();
  const double a = a_r_constant(in);
  const double g = gr(in);
  return 4.0 * a * a * in.w2 / (static_cast<double>(in.N) * (1.0 - g) * (1.0 - g));
}

double variance_bound(const GeometricBoundInput& in) {
  in.validate();
  const double half = 0.5 * gr(in);
  const double ratio = half / (1.0 - half);
  return (in.R + in.K) / static_cast<double>(in.M) * ratio * ratio;
}

double mse_bound(const GeometricBoundInput& in) {
  in.validate();
  const double g = gr(in);
  const double a = a_r_constant(in);
  const double chains = g * std::sqrt(in.R + in.K) / (std::sqrt(static_cast<double>(in.M)) * (2.0 - g));
  const double init = 2.0 * a * std::sqrt(in.w2) / (std::sqrt(static_cast<double>(in.N)) * (1.0 - g));
  return (chains + init) * (chains + init);
}

double simplified_bound_ratio(const GeometricBoundInput& in) {
  return (in.gamma * in.R + 2.0 * in.K) * in.w2;
}

double simplified_mse_bound(const GeometricBoundInput& in) {
  in.validate();
  const double required = simplified_bound_ratio(in);
  const double ratio = static_cast<double>(in.N) / static_cast<double>(in.M);
  if (ratio < required) {
    std::ostringstream msg;
    msg << "simplified bound needs N/M >= " << required << " but N/M = " << ratio;
    throw std::invalid_argument(msg.str());
  }
  const double g = gr(in);
  return (6.25 * g * in.R + 12.5 * in.K) / (static_cast<double>(in.M) * (1.0 - g) * (1.0 - g));
}

double concentration_bias(const MultBoundInput& in) {
  in.validate();
  const double g = mult_gr(in);
  const double exponent = static_cast<double>(in.N) * in.eps * in.eps * (1.0 - g) * (1.0 - g) /
                          (2.0 * std::exp(2.0 * in.B_R) * in.w_star * in.w_star);
  return 4.0 * std::exp(-exponent);
}

double concentration_sum(const MultBoundInput& in) {
  in.validate();
  const double g = mult_gr(in);
  const double exponent = static_cast<double>(in.M) * in.eps * in.eps * (1.0 - g) * (1.0 - g) /
                          (9.0 * std::exp(2.0 * in.B_R));
  return 2.0 * std::exp(-exponent);
}

double concentration_total(const MultBoundInput& in) {
  in.validate();
  const double g = mult_gr(in);
  const double effective = std::min(2.0 * static_cast<double>(in.M) / 9.0,
                                    static_cast<double>(in.N) / (in.w_star * in.w_star));
  const double exponent =
      in.eps * in.eps * (1.0 - g) * (1.0 - g) * effective / (8.0 * std::exp(2.0 * in.B_R));
  return 6.0 * std::exp(-exponent);
}

double stationary_f_bound(double gamma, double K) {
  require(gamma >= 0.0 && gamma < 1.0 && K > 0.0, "invalid drift constants");
  return K / (1.0 - gamma);
}

double excursion_sum_bound(const DriftSpec& drift, double v_at_x, double f_at_x) {
  const double g = drift.gamma_R();
  return (v_at_x - 1.0 - (1.0 - drift.gamma) * f_at_x + 2.0 * drift.K) / (1.0 - g);
}

double excursion_sum_bound_sup(const DriftSpec& drift, double sup_V_C) {
  const double g = drift.gamma_R();
  return (drift.gamma * sup_V_C + 2.0 * drift.K - 1.0) / (1.0 - g);
}

SamplePlan plan_sizes(double eps, double delta, double gamma, double K, double R, double w2,
                      double sup_V_C) {
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  GeometricBoundInput in{gamma, K, R, 1, 1, w2, sup_V_C};
  in.validate();
  const double g = gr(in);
  const double a = g * std::sqrt(R + K) / (2.0 - g);
  const double b = 2.0 * a_r_constant(in) * std::sqrt(w2) / (1.0 - g);
  const double budget = delta * eps * eps;
  const double m = std::ceil(4.0 * a * a / budget);
  const double n = std::ceil(4.0 * b * b / budget);
  constexpr double kLimit = 9.2e18;
  if (!(m < kLimit && n < kLimit)) throw std::invalid_argument("planned sample sizes overflow");
  return {static_cast<std::uint64_t>(std::max(1.0, n)), static_cast<std::uint64_t>(std::max(1.0, m))};
}

double log_proposal_chi2_factor(double h, std::size_t d) {
  require(h > 0.0 && std::isfinite(h), "h must be positive");
  return static_cast<double>(d) * std::log(1.0 / (2.0 * std::sqrt(2.0 * h)) + std::sqrt(h / 2.0));
}

double proposal_chi2_factor(double h, std::size_t d) { return std::exp(log_proposal_chi2_factor(h, d)); }

ArConstants ar_constants(double rho, std::size_t d, double h, double r) {
  require(rho > 0.0 && rho < 1.0, "rho must lie in (0, 1)");
  require(d >= 1, "dimension must be at least 1");
  require(h > 0.0, "h must be positive");
  require(r > 1.0, "r must exceed 1");
  ArConstants c;
  const double dd = static_cast<double>(d);
  c.gamma = rho * rho;
  c.K = (1.0 - rho * rho) * (1.0 + dd);
  c.R = 1.0 + r * dd;
  c.sup_V_C = c.R;
  c.w2 = proposal_chi2_factor(h, d);
  return c;
}

DriftSpec PgConstants::drift() const {
  if (!valid) {
    throw std::invalid_argument("Polya-Gamma drift is degenerate: R = 1 + rL does not exceed K = 1 + L");
  }
  return {0.0, K, R, true};
}

PgConstants pg_constants(const Eigen::MatrixXd& X, const Eigen::VectorXd& Y,
                         const Eigen::MatrixXd& Sigma, double h, double r) {
  require(X.rows() == Y.size(), "X and Y disagree on the number of observations");
  require(Sigma.rows() == X.cols() && Sigma.cols() == X.cols(), "Sigma has the wrong shape");
  require(h > 0.0 && h <= 0.5, "h must lie in (0, 1/2]");
  require(r > 1.0, "r must exceed 1");
  const auto d = static_cast<std::size_t>(X.cols());
  (void)spd_factor(Sigma, "prior covariance");

  PgConstants c;
  c.r = r;
  const Eigen::VectorXd centered = Y.array() - 0.5;
  const Eigen::VectorXd score = X.transpose() * centered;
  const double sigma_norm = largest_eigenvalue_psd(Sigma);
  c.L = sigma_norm * sigma_norm * score.squaredNorm();
  c.K = 1.0 + c.L;
  c.R = 1.0 + r * c.L;
  c.K_with_trace = c.K + Sigma.trace();
  c.valid = c.R > c.K;
  c.gamma_r = c.K / c.R;

  const Eigen::MatrixXd gram = X.transpose() * X;
  c.lambda_star = largest_eigenvalue_psd(gram) / 4.0;
  c.x_norm_sq = spectral_norm(X) * spectral_norm(X);

  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(X.cols(), X.cols());
  const double log_factor = log_proposal_chi2_factor(h, d);
  c.log_W_d = log_det_spd(c.x_norm_sq * Sigma / 4.0 + eye) + log_factor;
  c.log_chi2_bound = log_det_spd(c.lambda_star * Sigma + eye) + log_factor;
  c.W_d = std::exp(c.log_W_d);
  c.chi2_bound = std::exp(c.log_chi2_bound);
  return c;
}

double pg_mse_bound_literal(const PgConstants& pg, std::uint64_t M, std::uint64_t N) {
  (void)pg.drift();
  require(M >= 1 && N >= 1, "sample sizes M and N must be positive");
  const double g = pg.gamma_r;
  const double chains = g * std::sqrt((pg.r + 1.0) * pg.L + 2.0) /
                        (std::sqrt(static_cast<double>(M)) * (2.0 - g));
  const double init = (2.0 * pg.L + 1.0) * pg.W_d / (std::sqrt(static_cast<double>(N)) * (1.0 - g));
  return (chains + init) * (chains + init);
}

double pg_mse_bound_composed(const PgConstants& pg, std::uint64_t M, std::uint64_t N) {
  const DriftSpec drift = pg.drift();
  if (!std::isfinite(pg.chi2_bound)) return std::numeric_limits<double>::infinity();
  return mse_bound({drift.gamma, drift.K, drift.R, M, N, std::max(1.0, pg.chi2_bound), drift.R});
}

}  // namespace msc::bounds
