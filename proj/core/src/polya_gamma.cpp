// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include "msc/polya_gamma.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "msc/distributions.hpp"
#include "msc/errors.hpp"

namespace msc {
namespace {

constexpr double kTrunc = 0.64;
constexpr double kPi = std::numbers::pi;

// log Phi(x), accurate far into the lower tail where erfc underflows.
double log_normal_cdf(double x) {
  if (x > -20.0) return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2));
  const double x2 = x * x;
  return -0.5 * x2 - std::log(-x) - 0.5 * std::log(2.0 * kPi) +
         std::log1p(-1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2));
}

// n-th coefficient of the alternating Jacobi series for J*(1) at x.
double series_coefficient(int n, double x) {
  const double k = (n + 0.5) * kPi;
  if (x > kTrunc) return k * std::exp(-0.5 * k * k * x);
  const double log_a = -1.5 * (std::log(0.5 * kPi) + std::log(x)) + std::log(k) -
                       2.0 * (n + 0.5) * (n + 0.5) / x;
  return std::exp(log_a);
}

// Probability of drawing from the exponential piece (right of kTrunc).
double exponential_piece_mass(double z, double rate) {
  const double root_t = std::sqrt(1.0 / kTrunc);
  const double b = root_t * (kTrunc * z - 1.0);
  const double a = -root_t * (kTrunc * z + 1.0);
  const double x0 = std::log(rate) + rate * kTrunc;
  const double xb = x0 - z + log_normal_cdf(b);
  const double xa = x0 + z + log_normal_cdf(a);
  const double q_over_p = 4.0 / kPi * (std::exp(xb) + std::exp(xa));
  return 1.0 / (1.0 + q_over_p);
}

class IterationBudget {
 public:
  void spend() {
    if (++used_ > kPolyaGammaIterationCap) {
      throw NumericError("Polya-Gamma sampler exceeded its iteration cap");
    }
  }

 private:
  int used_ = 0;
};

// Inverse Gaussian IG(1/z, 1) truncated to (0, kTrunc).
double truncated_inverse_gaussian(RngStream& stream, double z, IterationBudget& budget) {
  if (z < 1.0 / kTrunc) {
    // Mean beyond the truncation point: propose from the z = 0 law and tilt.
    while (true) {
      budget.spend();
      double e1 = sample_exponential(stream);
      double e2 = sample_exponential(stream);
      while (e1 * e1 > 2.0 * e2 / kTrunc) {
        budget.spend();
        e1 = sample_exponential(stream);
        e2 = sample_exponential(stream);
      }
      const double denom = 1.0 + e1 * kTrunc;
      const double x = kTrunc / (denom * denom);
      if (stream.uniform() <= std::exp(-0.5 * z * z * x)) return x;
    }
  }
  const double mu = 1.0 / z;
  double x = kTrunc + 1.0;
  while (x > kTrunc) {
    budget.spend();
    const double n = sample_std_normal(stream);
    const double mu_y = mu * n * n;
    x = mu + 0.5 * mu * mu_y - 0.5 * mu * std::sqrt(4.0 * mu_y + mu_y * mu_y);
    if (stream.uniform() > mu / (mu + x)) x = mu * mu / x;
  }
  return x;
}

}  // namespace

double sample_polya_gamma(RngStream& stream, double b) {
  if (!std::isfinite(b) || b < 0.0) {
    throw std::invalid_argument("Polya-Gamma parameter must be finite and nonnegative");
  }
  // Sample J*(1, z) with z = b/2; PG(1, b) = J*(1, b/2) / 4.
  const double z = 0.5 * b;
  const double rate = 0.125 * kPi * kPi + 0.5 * z * z;
  const double p_exponential = exponential_piece_mass(z, rate);

  IterationBudget budget;
  while (true) {
    budget.spend();
    const double x = stream.uniform() < p_exponential
                         ? kTrunc + sample_exponential(stream) / rate
                         : truncated_inverse_gaussian(stream, z, budget);
    double s = series_coefficient(0, x);
    const double y = stream.uniform() * s;
    for (int n = 1;; ++n) {
      budget.spend();
      if (n % 2 == 1) {
        s -= series_coefficient(n, x);
        if (y <= s) return 0.25 * x;
      } else {
        s += series_coefficient(n, x);
        if (y > s) break;
      }
    }
  }
}

double polya_gamma_mean(double b) {
  b = std::abs(b);
  if (b < 1e-4) return 0.25 - b * b / 48.0;
  return std::tanh(0.5 * b) / (2.0 * b);
}

double polya_gamma_variance(double b) {
  b = std::abs(b);
  if (b < 1e-2) return 1.0 / 24.0 - b * b / 120.0 + 17.0 * b * b * b * b / 13440.0;
  if (b > 40.0) return (1.0 - 2.0 * b * std::exp(-b)) / (2.0 * b * b * b);
  const double c = std::cosh(0.5 * b);
  return (std::sinh(b) - b) / (4.0 * b * b * b * c * c);
}

}  // namespace msc
