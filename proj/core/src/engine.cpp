// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include "msc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "msc/distributions.hpp"
#include "msc/errors.hpp"
#include "msc/parallel.hpp"

namespace msc {

void DriftSpec::validate() const {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("drift gamma must lie in [0, 1)");
  if (!(K > 0.0) || !std::isfinite(K)) throw std::invalid_argument("drift K must be positive");
  const double threshold = K / (1.0 - gamma);
  if (!(R > threshold) || !std::isfinite(R)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "return level R = " << R << " must exceed K / (1 - gamma) = " << threshold;
    throw std::invalid_argument(msg.str());
  }
}

double DriftSpec::gamma_R() const {
  validate();
  return gamma + K / R;
}

std::vector<TestFunction> coordinate_functions(std::size_t dimension,
                                               std::span<const std::string> names) {
  if (!names.empty() && names.size() != dimension) {
    throw std::invalid_argument("coordinate name count does not match the dimension");
  }
  std::vector<TestFunction> out;
  out.reserve(dimension);
  for (std::size_t j = 0; j < dimension; ++j) {
    const auto index = static_cast<Eigen::Index>(j);
    out.push_back({names.empty() ? "x" + std::to_string(j + 1) : names[j],
                   [index](const State& x) { return x[index]; }});
  }
  return out;
}

WeightedAtoms build_initial_distribution(const ModelBundle& model, std::size_t N,
                                         std::uint64_t master_seed, std::size_t workers) {
  if (N < 1) throw std::invalid_argument("initial distribution needs N >= 1");
  WeightedAtoms out;
  out.atoms.resize(N);
  out.log_weights.resize(N);
  parallel_for(N, workers, [&](std::size_t i) {
    RngStream stream(master_seed, "init", i);
    out.atoms[i] = model.propose(stream);
    out.log_weights[i] = model.log_weight(out.atoms[i]);
  });

  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < N; ++i) {
    const double lw = out.log_weights[i];
    if (std::isnan(lw) || lw == std::numeric_limits<double>::infinity()) {
      throw NumericError("log weight of atom " + std::to_string(i) + " is not finite");
    }
    max_log = std::max(max_log, lw);
  }
  if (max_log == -std::numeric_limits<double>::infinity()) {
    throw NumericError("all importance weights are zero");
  }

  out.norm_weights.resize(N);
  double total = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    out.norm_weights[i] = std::exp(out.log_weights[i] - max_log);
    total += out.norm_weights[i];
  }
  double sum_sq = 0.0;
  for (double& w : out.norm_weights) {
    w /= total;
    sum_sq += w * w;
  }
  out.ess = 1.0 / sum_sq;
  out.w2_hat = estimate_weight_second_moment(out);
  return out;
}

double estimate_weight_second_moment(const WeightedAtoms& atoms) {
  const std::size_t n = atoms.norm_weights.size();
  if (n == 0) throw NumericError("no atoms");
  double total = 0.0;
  double sum_sq = 0.0;
  for (double w : atoms.norm_weights) {
    total += w;
    sum_sq += w * w;
  }
  if (!(total > 0.0)) throw NumericError("zero total importance weight");
  return static_cast<double>(n) * sum_sq / (total * total);
}

Excursion run_excursion(const ModelBundle& model, const State& start, RngStream& stream,
                        std::uint64_t cap, std::span<const TestFunction> functions) {
  if (cap < 1) throw std::invalid_argument("excursion cap must be at least 1");
  Excursion out;
  out.sums.assign(functions.size(), 0.0);
  if (!model.in_return_set(start)) return out;

  out.started_in_C = true;
  State x = start;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    x = model.kernel_step(stream, x);
    for (std::size_t j = 0; j < functions.size(); ++j) out.sums[j] += functions[j].fn(x);
    if (model.in_return_set(x)) {
      out.tau = k;
      return out;
    }
  }
  throw CapExceeded(stream.index(), cap);
}

namespace {

MscResult run_chains(const ModelBundle& model, const StartSampler& start_sampler, std::size_t M,
                     std::span<const TestFunction> functions, std::uint64_t master_seed,
                     const EngineOptions& options) {
  if (M < 2) throw std::invalid_argument("the MSC estimate needs M >= 2 chains");
  const std::size_t k = functions.size();

  std::vector<double> sums(M * k);
  std::vector<std::uint64_t> taus(M);
  std::vector<unsigned char> started(M);
  parallel_for(M, options.workers, [&](std::size_t m) {
    RngStream stream(master_seed, "chain", m);
    const State start = start_sampler(stream);
    Excursion e = run_excursion(model, start, stream, options.cap, functions);
    std::copy(e.sums.begin(), e.sums.end(), sums.begin() + static_cast<std::ptrdiff_t>(m * k));
    taus[m] = e.tau;
    started[m] = e.started_in_C ? 1 : 0;
  });

  MscResult out;
  out.M = M;
  out.names.reserve(k);
  for (const auto& f : functions) out.names.push_back(f.name);
  out.estimates.assign(k, 0.0);
  out.stderrs.assign(k, 0.0);

  const double m_count = static_cast<double>(M);
  for (std::size_t m = 0; m < M; ++m) {
    for (std::size_t j = 0; j < k; ++j) out.estimates[j] += sums[m * k + j];
  }
  for (double& e : out.estimates) e /= m_count;
  for (std::size_t m = 0; m < M; ++m) {
    for (std::size_t j = 0; j < k; ++j) {
      const double dev = sums[m * k + j] - out.estimates[j];
      out.stderrs[j] += dev * dev;
    }
  }
  for (double& s : out.stderrs) s = std::sqrt(s / (m_count - 1.0) / m_count);

  double tau_total = 0.0;
  std::size_t skipped = 0;
  for (std::size_t m = 0; m < M; ++m) {
    tau_total += static_cast<double>(taus[m]);
    if (!started[m]) ++skipped;
  }
  out.mean_tau = tau_total / m_count;
  out.skip_fraction = static_cast<double>(skipped) / m_count;

  std::vector<std::uint64_t> sorted = taus;
  const std::size_t rank = static_cast<std::size_t>(std::ceil(0.95 * m_count));
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                   sorted.end());
  out.p95_tau = static_cast<double>(sorted[rank - 1]);
  out.taus = std::move(taus);
  return out;
}

}  // namespace

MscResult msc_estimate(const ModelBundle& model, const WeightedAtoms& atoms, std::size_t M,
                       std::span<const TestFunction> functions, std::uint64_t master_seed,
                       const EngineOptions& options) {
  if (atoms.size() == 0) throw std::invalid_argument("empty initial distribution");
  const AliasTable table(atoms.norm_weights, 1e-12 * static_cast<double>(atoms.size()) + 1e-12);
  auto sampler = [&](RngStream& stream) -> State { return atoms.atoms[table.sample(stream)]; };
  MscResult out = run_chains(model, sampler, M, functions, master_seed, options);
  out.N = atoms.size();
  out.ess = atoms.ess;
  out.w2_hat = atoms.w2_hat;
  return out;
}

MscResult msc_estimate_from(const ModelBundle& model, const StartSampler& start_sampler,
                            std::size_t M, std::span<const TestFunction> functions,
                            std::uint64_t master_seed, const EngineOptions& options) {
  return run_chains(model, start_sampler, M, functions, master_seed, options);
}

}  // namespace msc
