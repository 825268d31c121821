// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace msc {

/// FNV-1a 64-bit hash of a stream label. Fixed so that (seed, label, index)
/// triples name the same stream on every platform.
std::uint64_t hash_label(std::string_view label) noexcept;

/// One Philox4x32-10 block: encrypts `counter` under `key`.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Deterministic counter-based random stream.
///
/// A stream is identified by (master_seed, label, index). The key of the
/// Philox block cipher is derived from the seed and the label hash; the
/// stream index occupies the upper half of the 128-bit counter and the lower
/// half counts blocks. Deriving a stream is O(1) and independent of any other
/// stream, so the draws a chain sees do not depend on which thread runs it.
///
/// Streams are single-owner: move them between threads, never share them.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::string_view label, std::uint64_t index) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept { return next_u64(); }

  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1); safe to pass to log().
  double uniform_open() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t label_hash() const noexcept { return label_hash_; }
  std::uint64_t index() const noexcept { return index_; }

  /// Number of 64-bit words drawn so far.
  std::uint64_t draws() const noexcept { return block_ * 2 - (pos_ < 2 ? 2 - pos_ : 0); }

 private:
  void refill() noexcept;

  std::uint64_t master_seed_;
  std::uint64_t label_hash_;
  std::uint64_t index_;
  std::array<std::uint32_t, 2> key_{};
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int pos_ = 2;
};

RngStream derive_stream(std::uint64_t master_seed, std::string_view label,
                        std::uint64_t index) noexcept;

}  // namespace msc
