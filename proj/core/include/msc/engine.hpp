// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "msc/rng.hpp"

namespace msc {

using State = Eigen::VectorXd;

/// Constants of a drift condition PV <= V - (1 - gamma) f + K and the level R
/// of the return set C = {f <= R}.
struct DriftSpec {
  double gamma = 0.0;
  double K = 0.0;
  double R = 0.0;
  bool geometric = true;  ///< f = V

  /// Throws std::invalid_argument unless gamma in [0, 1), K > 0 and
  /// R > K / (1 - gamma).
  void validate() const;

  /// gamma + K / R, strictly below one for a valid spec.
  double gamma_R() const;
};

/// A target together with everything the estimator needs: importance
/// proposal Q, log dPi/dQ up to a constant, the Markov kernel, the drift
/// function f >= 1 and the return set.
///
/// Implementations must be immutable after construction; the engine calls
/// them concurrently from several threads.
class ModelBundle {
 public:
  virtual ~ModelBundle() = default;

  virtual std::size_t dimension() const = 0;
  virtual State propose(RngStream& stream) const = 0;
  virtual double log_weight(const State& x) const = 0;
  virtual State kernel_step(RngStream& stream, const State& x) const = 0;
  virtual double f_value(const State& x) const = 0;
  virtual DriftSpec drift() const = 0;

  /// Membership in C. Defaults to f(x) <= R.
  virtual bool in_return_set(const State& x) const { return f_value(x) <= drift().R; }
};

struct TestFunction {
  std::string name;
  std::function<double(const State&)> fn;
};

/// phi_j(x) = x_j for every coordinate, named by `names` or "x1", "x2", ...
std::vector<TestFunction> coordinate_functions(std::size_t dimension,
                                               std::span<const std::string> names = {});

/// The random initial distribution: atoms drawn from Q and their
/// self-normalized importance weights.
struct WeightedAtoms {
  std::vector<State> atoms;
  std::vector<double> log_weights;   ///< as returned by the model
  std::vector<double> norm_weights;  ///< sum to one
  double ess = 0.0;                  ///< 1 / sum(norm_weights^2)
  double w2_hat = 0.0;               ///< estimate of E_Q[w^2] = N / ess

  std::size_t size() const noexcept { return atoms.size(); }
};

/// Summary of one chain path X_0, ..., X_tau.
struct Excursion {
  bool started_in_C = false;
  std::uint64_t tau = 0;
  std::vector<double> sums;  ///< sum_{k=1..tau} phi_j(X_k)
};

struct MscResult {
  std::vector<std::string> names;
  std::vector<double> estimates;
  std::vector<double> stderrs;
  std::uint64_t M = 0;
  std::uint64_t N = 0;
  double mean_tau = 0.0;
  double p95_tau = 0.0;
  double skip_fraction = 0.0;
  double ess = 0.0;
  double w2_hat = 0.0;
  std::vector<std::uint64_t> taus;  ///< per chain, in chain order
};

inline constexpr std::uint64_t kDefaultExcursionCap = 1'000'000;

struct EngineOptions {
  std::uint64_t cap = kDefaultExcursionCap;
  std::size_t workers = 0;  ///< 0 = hardware concurrency
};

/// Draws atoms i = 0..N-1 from model.propose on stream ("init", i) and
/// normalizes their weights with a max shift in log space.
///
/// Throws NumericError if every log weight is -inf or any is NaN/+inf.
WeightedAtoms build_initial_distribution(const ModelBundle& model, std::size_t N,
                                         std::uint64_t master_seed, std::size_t workers = 0);

/// N * sum(w^2) / (sum w)^2 over the unnormalized weights. Consistent for
/// the integral of w against the target even when w is known only up to a
/// constant.
double estimate_weight_second_moment(const WeightedAtoms& atoms);

/// Runs the chain from `start` until its first return to C, accumulating
/// phi(X_k) for k = 1..tau. A start outside C yields the zero excursion.
/// Throws CapExceeded (tagged with the stream index) after `cap` steps.
Excursion run_excursion(const ModelBundle& model, const State& start, RngStream& stream,
                        std::uint64_t cap, std::span<const TestFunction> functions);

/// Draws a starting state from a stream. Used to start chains from something
/// other than the weighted atoms (e.g. exact draws from the target in tests).
using StartSampler = std::function<State(RngStream&)>;

/// The many-short-chains estimate: chain m draws its start from the atoms and
/// runs its excursion on stream ("chain", m). Estimates are means of the M
/// excursion sums; stderrs are sample standard deviations over sqrt(M).
/// Reduction is sequential in chain order, so results do not depend on the
/// worker count.
MscResult msc_estimate(const ModelBundle& model, const WeightedAtoms& atoms, std::size_t M,
                       std::span<const TestFunction> functions, std::uint64_t master_seed,
                       const EngineOptions& options = {});

/// Same as msc_estimate with starts drawn by `start_sampler` on the chain's
/// stream. N, ess and w2_hat are reported as zero.
MscResult msc_estimate_from(const ModelBundle& model, const StartSampler& start_sampler,
                            std::size_t M, std::span<const TestFunction> functions,
                            std::uint64_t master_seed, const EngineOptions& options = {});

}  // namespace msc
