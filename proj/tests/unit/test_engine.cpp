// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "msc/ar_model.hpp"
#include "msc/engine.hpp"
#include "msc/errors.hpp"
#include "oracles.hpp"

using msc::RngStream;
using msc::State;

namespace {

/// Scalar model assembled from callables, for checking engine mechanics.
class LambdaModel final : public msc::ModelBundle {
 public:
  std::function<State(RngStream&)> propose_fn = [](RngStream&) { return State::Zero(1); };
  std::function<double(const State&)> log_weight_fn = [](const State&) { return 0.0; };
  std::function<State(RngStream&, const State&)> step_fn = [](RngStream&, const State& x) { return x; };
  double R = 2.0;

  std::size_t dimension() const override { return 1; }
  State propose(RngStream& s) const override { return propose_fn(s); }
  double log_weight(const State& x) const override { return log_weight_fn(x); }
  State kernel_step(RngStream& s, const State& x) const override { return step_fn(s, x); }
  double f_value(const State& x) const override { return 1.0 + x.squaredNorm(); }
  msc::DriftSpec drift() const override { return {0.5, 0.5, R, true}; }
};

State scalar(double v) { return State::Constant(1, v); }

std::vector<msc::TestFunction> identity_function() {
  return {{"x", [](const State& x) { return x[0]; }}};
}

msc::ArConfig reference_ar() { return msc::ArConfig{0.9, 2, 0.49, 1.5}; }

}  // namespace

TEST_CASE("drift spec validation") {
  CHECK_NOTHROW(msc::DriftSpec{0.81, 0.57, 4.0, true}.validate());
  CHECK(msc::DriftSpec{0.81, 0.57, 4.0, true}.gamma_R() == doctest::Approx(0.9525));
  CHECK_THROWS_AS((msc::DriftSpec{0.5, 1.0, 2.0, true}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((msc::DriftSpec{1.0, 1.0, 10.0, true}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((msc::DriftSpec{0.5, 0.0, 10.0, true}.validate()), std::invalid_argument);
  CHECK_NOTHROW(msc::DriftSpec{0.0, 1.0, 1.5, true}.validate());
}

TEST_CASE("build_initial_distribution") {
  SUBCASE("N = 2 with unnormalized weights (2, 1)") {
    LambdaModel model;
    model.propose_fn = [](RngStream& s) { return scalar(static_cast<double>(s.index())); };
    model.log_weight_fn = [](const State& x) { return x[0] == 0.0 ? std::log(2.0) : 0.0; };
    const auto atoms = msc::build_initial_distribution(model, 2, 7, 1);
    REQUIRE(atoms.size() == 2);
    CHECK(atoms.norm_weights[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(atoms.norm_weights[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(atoms.ess == doctest::Approx(1.8).epsilon(1e-14));
    CHECK(atoms.w2_hat == doctest::Approx(2.0 / 1.8).epsilon(1e-14));
  }
  SUBCASE("N = 1") {
    LambdaModel model;
    const auto atoms = msc::build_initial_distribution(model, 1, 7, 1);
    CHECK(atoms.norm_weights == std::vector<double>{1.0});
    CHECK(atoms.ess == 1.0);
  }
  SUBCASE("constant weights when the proposal equals the target") {
    const msc::ArModel model(msc::ArConfig{0.9, 3, 0.5, 1.5});
    const std::size_t N = 1000;
    const auto atoms = msc::build_initial_distribution(model, N, 11, 1);
    for (double w : atoms.norm_weights) REQUIRE(w == doctest::Approx(1.0 / N).epsilon(1e-12));
    CHECK(atoms.w2_hat == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(msc::estimate_weight_second_moment(atoms) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("huge log weights are shifted before exponentiation") {
    LambdaModel model;
    model.propose_fn = [](RngStream& s) { return scalar(static_cast<double>(s.index())); };
    model.log_weight_fn = [](const State& x) { return 5000.0 - x[0]; };
    const auto atoms = msc::build_initial_distribution(model, 3, 1, 1);
    const double z = 1.0 + std::exp(-1.0) + std::exp(-2.0);
    CHECK(atoms.norm_weights[0] == doctest::Approx(1.0 / z));
    CHECK(atoms.norm_weights[2] == doctest::Approx(std::exp(-2.0) / z));
  }
  SUBCASE("a zero weight atom is allowed, all-zero is not") {
    LambdaModel model;
    model.propose_fn = [](RngStream& s) { return scalar(static_cast<double>(s.index())); };
    model.log_weight_fn = [](const State& x) {
      return x[0] == 0.0 ? -std::numeric_limits<double>::infinity() : 0.0;
    };
    const auto atoms = msc::build_initial_distribution(model, 3, 1, 1);
    CHECK(atoms.norm_weights[0] == 0.0);
    CHECK(atoms.ess == doctest::Approx(2.0));
    model.log_weight_fn = [](const State&) { return -std::numeric_limits<double>::infinity(); };
    CHECK_THROWS_AS(msc::build_initial_distribution(model, 3, 1, 1), msc::NumericError);
  }
  SUBCASE("NaN and +inf log weights are errors") {
    LambdaModel model;
    model.log_weight_fn = [](const State&) { return std::numeric_limits<double>::quiet_NaN(); };
    CHECK_THROWS_AS(msc::build_initial_distribution(model, 3, 1, 1), msc::NumericError);
    model.log_weight_fn = [](const State&) { return std::numeric_limits<double>::infinity(); };
    CHECK_THROWS_AS(msc::build_initial_distribution(model, 3, 1, 1), msc::NumericError);
  }
  SUBCASE("N = 0 is rejected") {
    LambdaModel model;
    CHECK_THROWS_AS(msc::build_initial_distribution(model, 0, 1, 1), std::invalid_argument);
  }
}

TEST_CASE("weights sum to one and ess lies in [1, N]") {
  const msc::ArModel model(msc::ArConfig{0.9, 5, 0.2, 1.5});
  const std::size_t N = 20'000;
  const auto atoms = msc::build_initial_distribution(model, N, 3, 2);
  const double sum = std::accumulate(atoms.norm_weights.begin(), atoms.norm_weights.end(), 0.0);
  CHECK(std::abs(sum - 1.0) <= 1e-12 * N);
  CHECK(atoms.ess >= 1.0);
  CHECK(atoms.ess <= static_cast<double>(N));
  CHECK(atoms.w2_hat == doctest::Approx(N / atoms.ess));
}

TEST_CASE("weight second moment estimate matches the AR closed form") {
  const msc::ArConfig config = reference_ar();
  const msc::ArModel model(config);
  const std::size_t N = 1'000'000;
  const auto atoms = msc::build_initial_distribution(model, N, 2026);
  const double closed = std::pow(1.0 / (2.0 * std::sqrt(2.0 * config.h)) + std::sqrt(config.h / 2.0), 2.0);
  CHECK(closed == doctest::Approx(1.00010).epsilon(1e-5));

  // Bootstrap the standard error of N sum w^2 / (sum w)^2.
  std::vector<double> raw(N);
  for (std::size_t i = 0; i < N; ++i) raw[i] = std::exp(atoms.log_weights[i]);
  std::mt19937_64 engine(5);
  std::uniform_int_distribution<std::size_t> pick(0, N - 1);
  std::vector<double> replicates;
  for (int b = 0; b < 40; ++b) {
    double s1 = 0.0;
    double s2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double w = raw[pick(engine)];
      s1 += w;
      s2 += w * w;
    }
    replicates.push_back(static_cast<double>(N) * s2 / (s1 * s1));
  }
  const double boot_se = std::sqrt(msc::testing::moments(replicates).variance);
  CHECK(std::abs(atoms.w2_hat - closed) <= 3.0 * boot_se);
}

TEST_CASE("run_excursion semantics") {
  const auto functions = identity_function();
  RngStream stream(1, "chain", 0);

  SUBCASE("start outside C gives the zero excursion") {
    LambdaModel model;
    model.step_fn = [](RngStream&, const State&) -> State { throw std::logic_error("must not step"); };
    const auto e = msc::run_excursion(model, scalar(3.0), stream, 10, functions);
    CHECK_FALSE(e.started_in_C);
    CHECK(e.tau == 0);
    CHECK(e.sums == std::vector<double>{0.0});
  }
  SUBCASE("immediate return counts the return state and not the start") {
    LambdaModel model;
    model.step_fn = [](RngStream&, const State&) { return scalar(0.25); };
    const auto e = msc::run_excursion(model, scalar(0.5), stream, 10, functions);
    CHECK(e.started_in_C);
    CHECK(e.tau == 1);
    CHECK(e.sums[0] == 0.25);
  }
  SUBCASE("a deterministic excursion of length three") {
    // R = 2 means C = {|x| <= 1}; the path 0 -> 2 -> 3 -> 0.5 returns at step 3.
    LambdaModel model;
    model.step_fn = [](RngStream&, const State& x) {
      if (x[0] == 0.0) return scalar(2.0);
      if (x[0] == 2.0) return scalar(3.0);
      return scalar(0.5);
    };
    const auto e = msc::run_excursion(model, scalar(0.0), stream, 10, functions);
    CHECK(e.tau == 3);
    CHECK(e.sums[0] == 5.5);
  }
  SUBCASE("boundary of C is inside") {
    LambdaModel model;
    model.step_fn = [](RngStream&, const State&) { return scalar(1.0); };
    const auto e = msc::run_excursion(model, scalar(1.0), stream, 10, functions);
    CHECK(e.started_in_C);
    CHECK(e.tau == 1);
  }
  SUBCASE("no return within the cap") {
    LambdaModel model;
    model.step_fn = [](RngStream&, const State& x) { return scalar(x[0] + 5.0); };
    RngStream s(1, "chain", 17);
    try {
      msc::run_excursion(model, scalar(0.0), s, 100, functions);
      FAIL("expected CapExceeded");
    } catch (const msc::CapExceeded& e) {
      CHECK(e.chain() == 17);
      CHECK(e.cap() == 100);
    }
    CHECK_THROWS_AS(msc::run_excursion(model, scalar(0.0), s, 0, functions), std::invalid_argument);
  }
}

TEST_CASE("AR excursions leave C and come back exactly once") {
  const msc::ArModel model(reference_ar());
  const std::vector<msc::TestFunction> functions{
      {"in_C", [&](const State& x) { return model.in_return_set(x) ? 1.0 : 0.0; }},
      {"steps", [](const State&) { return 1.0; }}};
  for (std::uint64_t m = 0; m < 2000; ++m) {
    RngStream s(9, "chain", m);
    const State start = model.sample_invariant(s);
    const auto e = msc::run_excursion(model, start, s, msc::kDefaultExcursionCap, functions);
    if (!e.started_in_C) {
      REQUIRE(e.tau == 0);
      continue;
    }
    REQUIRE(e.tau >= 1);
    REQUIRE(e.sums[0] == 1.0);
    REQUIRE(e.sums[1] == static_cast<double>(e.tau));
  }
}

TEST_CASE("msc_estimate mechanics") {
  SUBCASE("singleton identity kernel") {
    LambdaModel model;
    model.propose_fn = [](RngStream&) { return scalar(0.75); };
    const auto atoms = msc::build_initial_distribution(model, 10, 1, 1);
    const auto result = msc::msc_estimate(model, atoms, 100, identity_function(), 1);
    CHECK(result.estimates[0] == 0.75);
    CHECK(result.stderrs[0] == 0.0);
    CHECK(result.mean_tau == 1.0);
    CHECK(result.p95_tau == 1.0);
    CHECK(result.skip_fraction == 0.0);
    CHECK(result.M == 100);
    CHECK(result.N == 10);
  }
  SUBCASE("skipped chains contribute zero and are not redrawn") {
    LambdaModel model;
    model.propose_fn = [](RngStream& s) { return scalar(s.index() % 2 == 0 ? 0.5 : 4.0); };
    model.step_fn = [](RngStream&, const State&) { return scalar(1.0); };
    const auto atoms = msc::build_initial_distribution(model, 2, 1, 1);
    const auto result = msc::msc_estimate(model, atoms, 20'000, identity_function(), 3);
    CHECK(result.skip_fraction == doctest::Approx(0.5).epsilon(0.03));
    CHECK(result.estimates[0] == doctest::Approx(1.0 - result.skip_fraction).epsilon(1e-12));
    CHECK(result.mean_tau == doctest::Approx(1.0 - result.skip_fraction).epsilon(1e-12));
    CHECK(result.mean_tau >= 1.0 - result.skip_fraction);
  }
  SUBCASE("M must be at least two") {
    LambdaModel model;
    const auto atoms = msc::build_initial_distribution(model, 1, 1, 1);
    CHECK_THROWS_AS(msc::msc_estimate(model, atoms, 1, identity_function(), 1), std::invalid_argument);
  }
  SUBCASE("the first failing chain is reported") {
    LambdaModel model;
    model.step_fn = [](RngStream&, const State& x) { return scalar(x[0] + 5.0); };
    auto start = [](RngStream& s) { return scalar(s.index() >= 37 ? 0.0 : 9.0); };
    msc::EngineOptions options;
    options.cap = 50;
    options.workers = 4;
    try {
      msc::msc_estimate_from(model, start, 200, identity_function(), 1, options);
      FAIL("expected CapExceeded");
    } catch (const msc::CapExceeded& e) {
      CHECK(e.chain() == 37);
    }
  }
}

TEST_CASE("results do not depend on the worker count") {
  const msc::ArModel model(reference_ar());
  const auto functions = msc::coordinate_functions(2);
  const auto a1 = msc::build_initial_distribution(model, 5000, 77, 1);
  const auto a8 = msc::build_initial_distribution(model, 5000, 77, 8);
  CHECK(a1.norm_weights == a8.norm_weights);
  msc::EngineOptions one;
  one.workers = 1;
  msc::EngineOptions eight;
  eight.workers = 8;
  const auto r1 = msc::msc_estimate(model, a1, 3000, functions, 77, one);
  const auto r8 = msc::msc_estimate(model, a8, 3000, functions, 77, eight);
  CHECK(r1.estimates == r8.estimates);
  CHECK(r1.stderrs == r8.stderrs);
  CHECK(r1.taus == r8.taus);
  CHECK(r1.mean_tau == r8.mean_tau);
}

TEST_CASE("AR mean estimate is consistent with zero") {
  const msc::ArModel model(reference_ar());
  const auto atoms = msc::build_initial_distribution(model, 100'000, 123);
  const auto result = msc::msc_estimate(model, atoms, 10'000, msc::coordinate_functions(2), 123);
  for (std::size_t j = 0; j < 2; ++j) {
    CAPTURE(j);
    CHECK(result.stderrs[j] > 0.0);
    CHECK(std::abs(result.estimates[j]) <= 3.0 * result.stderrs[j]);
  }
  CHECK(result.mean_tau >= 1.0 - result.skip_fraction);
}

TEST_CASE("representation identity with exact invariant starts") {
  const msc::ArConfig config = reference_ar();
  const msc::ArModel model(config);
  const double d = static_cast<double>(config.d);
  const std::vector<msc::TestFunction> functions{
      {"x1", [](const State& x) { return x[0]; }},
      {"ball", [d](const State& x) { return x.squaredNorm() <= d ? 1.0 : 0.0; }}};
  auto start = [&](RngStream& s) { return model.sample_invariant(s); };
  const auto result = msc::msc_estimate_from(model, start, 200'000, functions, 31);
  const double target = msc::testing::chi_square_cdf(d, static_cast<int>(config.d));
  CHECK(target == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-9));
  CHECK(std::abs(result.estimates[0]) <= 4.0 * result.stderrs[0]);
  CHECK(std::abs(result.estimates[1] - target) <= 4.0 * result.stderrs[1]);
}
