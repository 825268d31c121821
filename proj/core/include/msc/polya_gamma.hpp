// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "msc/rng.hpp"

namespace msc {

/// Maximum proposals per Pólya-Gamma draw before NumericError is thrown.
inline constexpr int kPolyaGammaIterationCap = 10000;

/// Exact draw from PG(1, b) by Devroye's alternating-series accept-reject
/// method: a mixture of a truncated inverse Gaussian (left of 0.64) and an
/// exponential tail (right of 0.64), accepted by squeezing the Jacobi series.
///
/// Throws std::invalid_argument if b is negative or non-finite.
double sample_polya_gamma(RngStream& stream, double b);

/// E[PG(1, b)] = tanh(b/2) / (2b), with the limit 1/4 at b = 0.
double polya_gamma_mean(double b);

/// Var[PG(1, b)] = (sinh b - b) / (4 b^3 cosh^2(b/2)), with limit 1/24 at b = 0.
double polya_gamma_variance(double b);

}  // namespace msc
