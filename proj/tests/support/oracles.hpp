// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
//
// Independent reference computations used only by tests. Nothing here calls
// into the code paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace msc::testing {

/// PG(1, b) from its defining series (1 / (2 pi^2)) sum_k g_k / ((k - 1/2)^2 +
/// b^2 / (4 pi^2)), g_k ~ Exp(1), truncated after `terms` terms. When
/// `tail_mean` is set, the expectation of the dropped tail is added, which
/// removes the truncation bias in the mean while its variance (O(terms^-3))
/// stays negligible.
class SumOfGammasPolyaGamma {
 public:
  SumOfGammasPolyaGamma(double b, std::size_t terms, bool tail_mean)
      : denom_(terms), tail_(0.0) {
    const double shift = b * b / (4.0 * std::numbers::pi * std::numbers::pi);
    for (std::size_t k = 1; k <= terms; ++k) {
      const double c = static_cast<double>(k) - 0.5;
      denom_[k - 1] = c * c + shift;
    }
    if (tail_mean) {
      // Sum over k > terms of 1/((k-1/2)^2 + shift), summed directly up to a
      // far cutoff and closed with the integral of the remainder.
      const std::size_t far = terms * 64;
      for (std::size_t k = terms + 1; k <= far; ++k) {
        const double c = static_cast<double>(k) - 0.5;
        tail_ += 1.0 / (c * c + shift);
      }
      tail_ += 1.0 / static_cast<double>(far);
    }
  }

  template <class Engine>
  double operator()(Engine& engine) const {
    std::exponential_distribution<double> exp1(1.0);
    double s = tail_;
    for (double d : denom_) s += exp1(engine) / d;
    return s / (2.0 * std::numbers::pi * std::numbers::pi);
  }

 private:
  std::vector<double> denom_;
  double tail_;
};

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

/// Asymptotic critical value of the two-sample KS statistic at `alpha`.
inline double ks_critical(double alpha, std::size_t n, std::size_t m) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return c * std::sqrt((nn + mm) / (nn * mm));
}

/// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Chi-square CDF with `k` degrees of freedom by quadrature of the density.
inline double chi_square_cdf(double x, int k) {
  const double half = 0.5 * k;
  const double log_norm = -half * std::log(2.0) - std::lgamma(half);
  auto density = [&](double t) {
    if (t <= 0.0) return (k == 2) ? 0.5 : 0.0;
    return std::exp(log_norm + (half - 1.0) * std::log(t) - 0.5 * t);
  };
  if (k == 1) {
    // Substitute t = u^2 to remove the integrable singularity at zero.
    auto g = [&](double u) { return u == 0.0 ? 2.0 * std::exp(log_norm) : 2.0 * u * density(u * u); };
    return simpson(g, 0.0, std::sqrt(x), 20000);
  }
  return simpson(density, 0.0, x, 20000);
}

/// Root of a monotone scalar function on [lo, hi] by bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations = 200) {
  double flo = f(lo);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double stderr_of_mean = 0.0;
};

inline Moments moments(const std::vector<double>& v) {
  Moments m;
  const double n = static_cast<double>(v.size());
  for (double x : v) m.mean += x;
  m.mean /= n;
  for (double x : v) m.variance += (x - m.mean) * (x - m.mean);
  m.variance /= (n - 1.0);
  m.stderr_of_mean = std::sqrt(m.variance / n);
  return m;
}

}  // namespace msc::testing
