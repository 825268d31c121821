// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <thread>
#include <vector>

#include "doctest.h"
#include "msc/rng.hpp"

using msc::RngStream;

namespace {

std::vector<double> first_uniforms(RngStream s, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (auto& u : out) u = s.uniform();
  return out;
}

}  // namespace

TEST_CASE("philox4x32-10 known-answer vectors") {
  using A4 = std::array<std::uint32_t, 4>;
  using A2 = std::array<std::uint32_t, 2>;
  CHECK(msc::philox4x32_10(A4{0, 0, 0, 0}, A2{0, 0}) ==
        A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(msc::philox4x32_10(A4{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                           A2{0xffffffffu, 0xffffffffu}) ==
        A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(msc::philox4x32_10(A4{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                           A2{0xa4093822u, 0x299f31d0u}) ==
        A4{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("label hash is FNV-1a 64") {
  CHECK(msc::hash_label("") == 0xcbf29ce484222325ull);
  CHECK(msc::hash_label("a") == 0xaf63dc4c8601ec8cull);
  CHECK(msc::hash_label("init") != msc::hash_label("chain"));
}

TEST_CASE("derive_stream is deterministic") {
  const auto a = first_uniforms(msc::derive_stream(42, "init", 0), 100);
  const auto b = first_uniforms(msc::derive_stream(42, "init", 0), 100);
  CHECK(a == b);
}

TEST_CASE("distinct indices, labels and seeds give distinct sequences") {
  const auto base = first_uniforms(msc::derive_stream(42, "init", 0), 100);
  CHECK(base != first_uniforms(msc::derive_stream(42, "init", 1), 100));
  CHECK(base != first_uniforms(msc::derive_stream(42, "chain", 0), 100));
  CHECK(base != first_uniforms(msc::derive_stream(43, "init", 0), 100));
}

TEST_CASE("sequences do not depend on the thread that draws them") {
  constexpr int kStreams = 8;
  std::vector<std::vector<double>> serial(kStreams);
  for (int i = 0; i < kStreams; ++i) serial[i] = first_uniforms(msc::derive_stream(42, "chain", 7 + i), 1000);

  std::vector<std::vector<double>> threaded(kStreams);
  {
    std::vector<std::jthread> pool;
    for (int i = 0; i < kStreams; ++i) {
      pool.emplace_back([&threaded, i] { threaded[i] = first_uniforms(msc::derive_stream(42, "chain", 7 + i), 1000); });
    }
  }
  CHECK(serial == threaded);
}

TEST_CASE("streams can be moved mid-sequence") {
  RngStream s(1, "x", 3);
  RngStream ref(1, "x", 3);
  s.next_u64();
  ref.next_u64();
  RngStream moved = std::move(s);
  CHECK(moved.next_u64() == ref.next_u64());
  CHECK(moved.draws() == 2);
}

TEST_CASE("uniforms lie in range with the right moments") {
  RngStream s(7, "moments", 0);
  constexpr int n = 1'000'000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double v = s.uniform_open();
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.0);
    sum += u;
    sum_sq += u * u;
  }
  CHECK(std::abs(sum / n - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / n) + 1e-9);
  CHECK(std::abs(sum_sq / n - 1.0 / 3.0) < 0.002);
}

TEST_CASE("pairwise correlation smoke test across neighbouring streams") {
  constexpr int n = 100'000;
  constexpr int streams = 6;
  std::vector<std::vector<double>> u(streams);
  for (int i = 0; i < streams; ++i) {
    RngStream s(42, i % 2 ? "chain" : "init", static_cast<std::uint64_t>(i / 2));
    u[i].resize(n);
    for (auto& x : u[i]) x = s.uniform() - 0.5;
  }
  const double bound = 5.0 / std::sqrt(static_cast<double>(n));
  for (int a = 0; a < streams; ++a) {
    for (int b = a + 1; b < streams; ++b) {
      double cross = 0.0;
      for (int k = 0; k < n; ++k) cross += u[a][k] * u[b][k];
      const double corr = cross / n * 12.0;
      CHECK(std::abs(corr) < bound);
    }
  }
}
