// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include "msc/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "msc/errors.hpp"

namespace msc {

double largest_eigenvalue_psd(const Eigen::MatrixXd& s, double rel_tol) {
  if (s.rows() != s.cols() || s.rows() == 0) {
    throw std::invalid_argument("largest_eigenvalue_psd needs a nonempty square matrix");
  }
  const Eigen::Index n = s.rows();
  // Deterministic start with no special alignment to coordinate axes.
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 0.01 * static_cast<double>(i % 7);
  v.normalize();

  double lambda = 0.0;
  constexpr int kMaxIterations = 100000;
  for (int it = 0; it < kMaxIterations; ++it) {
    Eigen::VectorXd w = s * v;
    const double next = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    if (it > 0 && std::abs(next - lambda) <= rel_tol * std::abs(next)) return next;
    lambda = next;
  }
  throw NumericError("power iteration did not converge");
}

double spectral_norm(const Eigen::MatrixXd& a, double rel_tol) {
  const Eigen::MatrixXd gram =
      a.cols() <= a.rows() ? Eigen::MatrixXd(a.transpose() * a) : Eigen::MatrixXd(a * a.transpose());
  return std::sqrt(largest_eigenvalue_psd(gram, rel_tol));
}

Eigen::LLT<Eigen::MatrixXd> spd_factor(const Eigen::MatrixXd& a, const char* what) {
  if (a.rows() != a.cols()) throw std::invalid_argument(std::string(what) + " is not square");
  if (!a.allFinite()) throw NumericError(std::string(what) + " has non-finite entries");
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NumericError(std::string(what) + " is not symmetric positive-definite");
  }
  return llt;
}

double log_det_spd(const Eigen::MatrixXd& a) {
  const auto llt = spd_factor(a, "matrix");
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace msc
