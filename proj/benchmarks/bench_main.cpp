// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <memory>

#include <benchmark/benchmark.h>

#include "msc/ar_model.hpp"
#include "msc/engine.hpp"
#include "msc/heart_data.hpp"
#include "msc/logit_model.hpp"
#include "msc/polya_gamma.hpp"
#include "msc/rng.hpp"

namespace {

std::shared_ptr<const msc::LogitPosterior> heart_posterior() {
  static const auto post = [] {
    msc::Dataset data = msc::load_heart_dataset(std::filesystem::path(MSC_DATA_DIR) / "processed.cleveland.data");
    const auto d = static_cast<Eigen::Index>(data.d());
    return std::make_shared<const msc::LogitPosterior>(std::move(data), 10.0 * Eigen::MatrixXd::Identity(d, d), 0.49);
  }();
  return post;
}

void BM_PolyaGamma(benchmark::State& state) {
  msc::RngStream s(1, "bench-pg", 0);
  const double b = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(msc::sample_polya_gamma(s, b));
}
BENCHMARK(BM_PolyaGamma)->Arg(0)->Arg(10)->Arg(100)->Arg(1000);

void BM_GibbsStepHeart(benchmark::State& state) {
  const auto post = heart_posterior();
  msc::RngStream s(1, "bench-gibbs", 0);
  Eigen::VectorXd beta = post->mode();
  for (auto _ : state) {
    beta = msc::pg_gibbs_step(s, beta, *post);
    benchmark::DoNotOptimize(beta.data());
  }
}
BENCHMARK(BM_GibbsStepHeart);

void BM_ArMsc(benchmark::State& state) {
  const msc::ArModel model({0.9, static_cast<std::size_t>(state.range(0)), 0.49, 1.5});
  const auto fns = msc::coordinate_functions(model.dimension());
  for (auto _ : state) {
    const auto atoms = msc::build_initial_distribution(model, 100'000, 7);
    benchmark::DoNotOptimize(msc::msc_estimate(model, atoms, 10'000, fns, 7));
  }
}
BENCHMARK(BM_ArMsc)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_HeartProposalWeights(benchmark::State& state) {
  const msc::LogitModel model(heart_posterior(), 1.001);
  for (auto _ : state) benchmark::DoNotOptimize(msc::build_initial_distribution(model, 10'000, 7));
}
BENCHMARK(BM_HeartProposalWeights)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
