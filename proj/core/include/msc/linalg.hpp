// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace msc {

inline constexpr double kPowerIterationTolerance = 1e-10;

/// Largest eigenvalue of a symmetric positive semidefinite matrix by power
/// iteration, stopped when successive Rayleigh quotients agree to `rel_tol`.
double largest_eigenvalue_psd(const Eigen::MatrixXd& s, double rel_tol = kPowerIterationTolerance);

/// Spectral norm ||A||_2 = sqrt(lambda_max(A^T A)) by power iteration.
double spectral_norm(const Eigen::MatrixXd& a, double rel_tol = kPowerIterationTolerance);

/// Lower Cholesky factor; throws NumericError if `a` is not SPD.
Eigen::LLT<Eigen::MatrixXd> spd_factor(const Eigen::MatrixXd& a, const char* what);

/// log det of an SPD matrix from its Cholesky factor.
double log_det_spd(const Eigen::MatrixXd& a);

}  // namespace msc
